"""Golden values transcribed verbatim from the published Legendre computations (typos included).

Keys are (a, b) for ORDINARY powers dx^a dy^b; values are polynomial strings
in x, y, lam (unreduced, exactly as printed).
"""

LAMBDA_DISPLAY = {
    0: "X1",
    1: "(X2 + X1^2)/2",
    2: "(2*X3 + 3*X1*X2 + X1^3)/6",
    3: "(6*X4 + (8*X1*X3 + 3*X2^2) + 6*X1^2*X2 + X1^4)/24",
    4: "(24*X5 + (30*X1*X4 + 20*X2*X3) + (15*X1*X2^2 + 20*X1^2*X3) + 10*X1^3*X2 + X1^5)/120",
}

P_LEGENDRE_XY_DISPLAY = {
    (1, 0): "2*y",
    (0, 1): "-(3*x^2 - 2*x*(1+lam) + lam)",
}

# d/dz and d/dw coefficients of P in the (z, w) chart, Legendre case
P_LEGENDRE_ZW_DISPLAY = {
    "w": "3*z^2 - 2*(1+lam)*z*w + lam*w^2",
    "z": "1 + (1+lam)*z^2 - 2*lam*z*w",
}

P2_LEGENDRE = {
    (0, 2): "14*lam*x^2 + 4*lam^2*x^2 + lam^2 + 9*x^4 - 12*x^3 + 4*x^2 - 4*lam*x - 4*lam^2*x - 12*lam*x^3",
    (2, 0): "4*y^2",
    (1, 1): "4*lam*y - 8*lam*x*y + 12*x^2*y - 8*x*y",
    (1, 0): "-4*x + 6*x^2 - 4*lam*x + 2*lam",
    (0, 1): "-4*y + 12*x*y - 4*lam*y",
}

P3_LEGENDRE = {
    (0, 3): (
        "lam^3 - 8*x^3 - 6*lam^3*x - 6*x*lam^2 + 12*lam*x^2 - 54*lam*x^5 + 12*lam^3*x^2"
        " - 8*lam^3*x^3 + 36*lam^2*x^4 + 33*lam^2*x^2 - 60*lam^2*x^3 - 60*lam*x^3"
        " + 99*lam*x^4 - 54*x^5 + 36*x^4 + 27*x^6"
    ),
    (3, 0): "8*y^3",
    (1, 2): (
        "84*lam*x^2*y + 24*lam^2*x^2*y + 24*y*x^2 - 72*lam*y*x^3 - 24*lam*y*x"
        " + 6*lam^2*y + 54*x^4*y - 24*lam^2*y*x - 72*x^3*y"
    ),
    (2, 1): "-24*y^2*x - 24*lam*y^2*x + 12*lam*y^2 + 36*y^2*x^2",
    (0, 2): (
        "-108*lam*x^2*y + 24*y*x + 84*lam*y*x - 12*lam*y + 108*x^3*y - 12*lam^2*y"
        " + 24*lam^2*y*x - 108*y*x^2"
    ),
    (1, 1): (
        "-72*lam*x^3 + 54*x^4 - 24*y^2 - 72*x^3 + 6*lam^2 - 24*lam^2*x + 24*x^2"
        " - 24*lam*y^2 + 72*y^2*x + 84*lam*x^2 + 24*lam^2*x^2 - 24*lam*x"
    ),
    (1, 0): "24*y*x - 8*lam*y - 8*y",
    (0, 1): (
        "-4*lam - 36*x^2 + 8*x + 28*lam*x - 36*lam*x^2 + 24*y^2 + 36*x^3"
        " - 4*lam^2 + 8*lam^2*x"
    ),
    (2, 0): "-24*lam*y*x - 24*y*x + 12*lam*y + 36*y*x^2",
}

# printed omega expansion for Legendre: exponent -> coefficient
OMEGA_LEGENDRE_PRINTED = {
    0: "1",
    1: "-1 - lam",
    4: "1 + 4*lam + lam^2",
    6: "-1 - 9*lam - 9*lam^2 - lam^3",
    8: "1 + 16*lam + 36*lam^2 + 16*lam^3 + lam^4",
}

# p = 2 Frobenius example on the Heisenberg side: b-monomial (as sorted mode
# tuple) -> numerator, over the common denominator
FROBENIUS_P2_SOURCE = ({(4,): 6, (1, 3): 8, (2, 2): 3, (1, 1, 2): 6, (1, 1, 1, 1): 1}, 24)
FROBENIUS_P2_TARGET = ({(2,): 1, (1, 1): 1}, 2)
