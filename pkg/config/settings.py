"""
Global Configuration — GVC Engine
---------------------------------
⚠ Configuration ONLY.
❌ No algebra
❌ No imports from core / gvc / cli

✔ Plain constants
✔ Environment overrides limited to output mode and log level
"""

import os
from pathlib import Path

# =====================================================
# 1️⃣ PROJECT ROOT
# =====================================================

BASE_DIR = Path(__file__).resolve().parent.parent


# =====================================================
# 2️⃣ RING / SYMBOL NAMES
# =====================================================

XY_RING = ("x", "y")                 # ambient ring of P, Q, f, g
PHI_RING = ("t",)                    # Φ(t)
OPERATOR_PREFIX = "D"                # symbol of ∂v is "D" + v


# =====================================================
# 3️⃣ RUN DEFAULTS
# =====================================================

DEFAULTS = {
    "Q": "1",
    "M_MAX": 12,
    "M_VERIFY": 5,
    "OUTPUT_MODE": "text",
    "SEED": 0,
    "WORKERS": 1,
    "SEARCH_M_MAX": 6,
    "SEARCH_Q_BASIS_DEGREE": 2,      # Q basis: x^a y^b with a, b <= this
}

OUTPUT_MODES = ("text", "json")


# =====================================================
# 4️⃣ HARD LIMITS (runaway guards)
# =====================================================

LIMITS = {
    "MAX_M": 500,
    "MAX_SEARCH_CANDIDATES": 1_000_000,
    "MAX_WORKERS": 64,
}


# =====================================================
# 5️⃣ ENGINE STRATEGIES
# =====================================================

FEATURES = {
    "DY_FIRST_PRUNING": True,        # apply Dy^m before (Dx - Φ(Dy))^m
    "INCREMENTAL_POWERS": True,      # P^m = P^(m-1) * P across the m-loop
}


# =====================================================
# 6️⃣ ENVIRONMENT
# =====================================================

ENV_OUTPUT_MODE = "GVC_OUTPUT"
ENV_LOG_LEVEL = "GVC_LOG_LEVEL"


def default_output_mode() -> str:
    """
    Output mode from the environment, falling back to DEFAULTS.
    Unknown values are ignored.
    """
    mode = os.environ.get(ENV_OUTPUT_MODE, "").strip().lower()
    return mode if mode in OUTPUT_MODES else DEFAULTS["OUTPUT_MODE"]


# =====================================================
# 7️⃣ LOGGING
# =====================================================

LOG_LEVEL = os.environ.get(ENV_LOG_LEVEL, "WARNING").strip().upper() or "WARNING"
LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
