"""Normalization constants for the Delta-grading of slice generators.

The grading laws fix all *relative* Delta-gradings inside one slice
bimodule; the per-slice additive constants below pin the absolute
(Alexander, Maslov) bigrading.  They were calibrated computationally
against: the unknot and both kinked unknots landing at (A, M) = (0, 0),
Maslov integrality, the mirror/reversal symmetries, and the standard
bigraded tables of the trefoils and the figure-eight (delta-thin with
delta = -writhe-sign).  The calibration is re-verified by the test
suite; see tests/test_gradings.py.

Keys for crossings: (positive_bimodule: bool, same_orientation: bool)
where same_orientation means the two strands below the crossing point
the same way.  Keys for max/min/terminal-min: left_up (whether the
left strand of the cap points up).
"""

from fractions import Fraction

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# Delta of the N (and S) generator; W, E sit at +1/2 (Pos) or -1/2 (Neg).
CROSS_BASE = {
    # (is_pos, same_orientation): delta(N)
    (True, True): -HALF,
    (True, False): Fraction(0),
    (False, True): HALF,
    (False, False): Fraction(0),
}

MAX_BASE = {True: Fraction(0), False: Fraction(0)}      # left_up -> delta
MIN_BASE = {True: Fraction(0), False: Fraction(0)}
TERMIN_BASE = {True: Fraction(0), False: Fraction(0)}
