import os

DEBUG = False  # set to True to see more detailed logs

# ------------------------------ rank backends ------------------------------ #

DEFAULT_BACKEND = "prime-field"  # one of: exact-rational, prime-field, float-svd
DEFAULT_PRIME = 2305843009213693951  # 2**61 - 1
DEFAULT_TOLERANCE = 1e-9  # relative singular value threshold for float-svd
EXACT_AUDIT_MAX_ROWS = 400  # exact-rational audit path only below this size

# --------------------------------- probes ---------------------------------- #

DEFAULT_SEED = 0
DEFAULT_TRIALS = 3  # repetitions of a probe, the max rank is kept
DEFAULT_BOUND = 99  # general points have integer entries in [-bound, bound]

# ------------------------------ table sweeps ------------------------------- #

THREADS = int(os.environ.get("SCROLLRANK_THREADS", 0)) or os.cpu_count() or 1
