"""Hand-transcribed reference polynomials for the worked fixtures."""
from mmtensor.algebra import MultiPoly

ZA_UV0 = "u^3 + 2 * u * v^2 + u * v^2 * t^2 + 3 * u^2 * v * t + v^3 * t"

Q_Z1 = "x.alpha11 * x.alpha21 * t + x.alpha11 * x.alpha22 + x.alpha12 * x.alpha21 + x.alpha12 * x.alpha22 * t"

Q_Z2_E1 = "t^2 b11 b21 + t b11 b22 + t b12 b21 + b12 b22"
Q_Z2_E2 = "t b11 b21 + b11 b22 + b12 b21 + t b12 b22"
Y1 = "t b11 b21 + b11 b22 + b12 b21"
Y2 = "b12 b22"

# (power of t, betas on the alpha1 copy, betas on the alpha2 copy)
TENSOR_TERMS = [
    (3, "11 21", "11 21"), (2, "11 21", "11 22"), (2, "11 21", "12 21"), (2, "11 22", "11 21"),
    (2, "12 21", "11 21"), (1, "11 21", "12 22"), (1, "11 22", "11 22"), (1, "12 21", "11 22"),
    (1, "11 22", "12 21"), (1, "12 21", "12 21"), (1, "12 22", "11 21"), (0, "11 22", "12 22"),
    (0, "12 21", "12 22"), (0, "12 22", "11 22"), (0, "12 22", "12 21"), (1, "12 22", "12 22"),
]

RG_PLANE_2_CYCLE = ("u.a * u.b * t^2 + u.a * v.b * t + u.a * w.b * t + u.b * v.a * t + "
                    "u.b * w.a * t + v.a * v.b * t^2 + v.a * w.b * t + v.b * w.a * t + w.a * w.b * t^2")


def beta_poly(text: str) -> MultiPoly:
    """``"t^2 b11 b21 + b12 b22"`` with ``bjk`` standing for ``x.betajk``."""
    total = MultiPoly.zero()
    for term in text.split("+"):
        p = MultiPoly.const(1)
        for tok in term.split():
            if tok.startswith("b"):
                p = p * MultiPoly.var(f"x.beta{tok[1:]}")
            else:
                p = p * MultiPoly.parse(tok)
        total = total + p
    return total


def tensor_poly() -> MultiPoly:
    total = MultiPoly.zero()
    t = MultiPoly.var("t")
    for k, left, right in TENSOR_TERMS:
        p = t ** k
        for alpha, betas in (("alpha1", left), ("alpha2", right)):
            for b in betas.split():
                p = p * MultiPoly.var(f"x.beta{b}@{alpha}")
        total = total + p
    return total
