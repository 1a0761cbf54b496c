"""Polynomials used across the test modules."""

QUADRIC = "1(*)x^2 (+) 1(*)y^2 (+) 2(*)xy (+) 2(*)x (+) 2(*)y (+) 1"
QUADRIC_PAIR = (
    "-1(*)x^2 (+) xy (+) -1(*)y^2 (+) x (+) y (+) -1",
    "-1/2(*)x^2 (+) 1(*)xy (+) -2(*)y^2 (+) x (+) y (+) 0",
)
LINES = ("x (+) y (+) 0", "1(*)x (+) y (+) 0")

SURFACE_DEG2 = "-3(*)x^2 (+) -4(*)xy (+) xz (+) -7(*)y^2 (+) -2(*)yz (+) -1(*)z^2 (+) x (+) y (+) -2(*)z (+) -7"
SURFACE_DEG3 = (
    "-23(*)x^3 (+) -15(*)x^2y (+) -7(*)x^2z (+) -15(*)xy^2 (+) xyz (+) -3(*)xz^2 (+) -25(*)y^3"
    " (+) -6(*)y^2z (+) -10(*)yz^2 (+) -20(*)z^3 (+) -2(*)x^2 (+) -6(*)xy (+) -1(*)xz (+) -14(*)y^2"
    " (+) yz (+) -9(*)z^2 (+) -11(*)x (+) -4(*)y (+) -9(*)z (+) -21"
)
PLANES = ("-1(*)x (+) -1(*)y (+) z (+) 1", "-2(*)x (+) 1(*)y (+) 1(*)z (+) -1")
ALMOST_CUBE = "xyz (+) -42(*)xy (+) x (+) y (+) z (+) -42"

# Curve on a 3x2 rectangle whose skeleton is two loops of lattice lengths 12
# and 15 joined by a bridge of length 1; heights found by
# scripts/construct_metric_example.py.
TWO_LOOPS = (
    "x^3y^2 (+) 1/2(*)x^3y (+) 23/3(*)x^2y^2 (+) x^3 (+) 55/6(*)x^2y (+) 13/3(*)xy^2"
    " (+) 23/3(*)x^2 (+) 59/6(*)xy (+) y^2 (+) 37/3(*)x (+) 9/2(*)y (+) 6"
)
