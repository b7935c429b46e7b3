"""
Constants used throughout bracelit.
"""

# Default search bounds (group or brace order)
AUTOMORPHISM_BOUND = 16
ENUMERATION_BOUND = 8
SUB_BRACE_BOUND = 64
ISOMORPHISM_BOUND = 8

# Pseudorandom spot checks run after a consistent identity solve
SPOT_CHECKS = 100

# CLI exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CHECK_FAILED = 3
EXIT_BOUND_EXCEEDED = 4

# Published numbers of skew brace isomorphism classes by order
PUBLISHED_BRACE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 1, 6: 6, 7: 1, 8: 47}

# Number of groups of each order up to isomorphism
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}

# Header written at the top of saved brace, group and algebra files
FILE_HEADER = "# bracelit"

# Prefix of machine-readable report lines
RESULT_PREFIX = "RESULT\t"
