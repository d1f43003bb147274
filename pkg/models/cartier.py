"""
Operador de Cartier sobre la base monomial h·dx/f_y (grado de h <= d-3) de
las diferenciales de una curva plana, por extracción de coeficientes.
"""

import logging
from dataclasses import dataclass

import numpy as np

from models.algebra import elem_pow_p, poly_coeffs_at, poly_mul, poly_pow, MultiPoly
from models.errores import InputError
from models.frobenius import SemilinearMap, frobenius_plane
from models.semilinear import kernel_dim, stable_rank

logger = logging.getLogger(__name__)

# (variable que vale 1, variable de la derivada en el denominador)
CARTAS = (
    ("z", "y"),
    ("z", "x"),
    ("y", None),
    ("x", None),
)
_INDICE = {"x": 0, "y": 1, "z": 2}


class DifferentialBasis:
    """Monomios (i, j) con i + j <= d - 3 en las dos variables afines de la carta."""

    def __init__(self, d, ctx, chart="z=1, dx/f_y"):
        self.d = d
        self.ctx = ctx
        self.chart = chart
        self.monomials = tuple(
            (i, s - i) for s in range(max(d - 2, 0)) for i in range(s, -1, -1)
        )

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def as_array(self):
        return np.array(self.monomials, dtype=np.int64).reshape(-1, 2)


def _carta_afin(f):
    """
    Primera carta válida del orden de reserva.

    Returns:
        tuple: (polinomio afín en dos variables, descripción de la carta)
    """
    for uno, derivada in CARTAS:
        afin = f.dehomogenize(_INDICE[uno])
        libres = [v for v in "xyz" if v != uno]
        if derivada is not None:
            candidatas = [derivada]
        else:
            candidatas = list(reversed(libres))
        for var in candidatas:
            if not afin.derivative(libres.index(var)).is_zero():
                otra = libres[1 - libres.index(var)]
                return afin, f"{uno}=1, d{otra}/f_{var}"
    raise InputError("Las tres cartas afines son degeneradas: cambie de coordenadas")


def _validar(f):
    if not isinstance(f, MultiPoly) or f.nvars != 3:
        raise InputError("cartier_plane necesita un polinomio en (x, y, z)")
    if f.is_zero() or not f.is_homogeneous():
        raise InputError("cartier_plane necesita un polinomio homogéneo no nulo")


def cartier_plane(f, ctx=None):
    """
    Matriz del operador de Cartier (torcimiento -1): la imagen de h es
    Σ c(pu+p-1, pv+p-1)^(1/p) x^u y^v, con c los coeficientes de f^(p-1)·h.
    """
    ctx = ctx or f.ctx
    _validar(f)
    d = f.degree
    if d < 3:
        return SemilinearMap(ctx.GF.Zeros((0, 0)), -1, DifferentialBasis(d, ctx))
    afin, carta = _carta_afin(f)
    base = DifferentialBasis(d, ctx, carta)
    p = ctx.p
    g = poly_pow(afin, p - 1)
    monomios = base.as_array()
    # consulta[i, j] = p·(u_i, v_i) + (p-1, p-1) - (i_j, j_j)
    consultas = p * monomios[:, None, :] + (p - 1) - monomios[None, :, :]
    n = len(base)
    entradas = poly_coeffs_at(g, consultas.reshape(-1, 2)).reshape(n, n)
    logger.debug("Cartier en la carta %s", carta)
    return SemilinearMap(elem_pow_p(entradas, -1), -1, base)


def cartier_by_differentiation(f, ctx=None):
    """Misma matriz, derivando literalmente p-1 veces en cada variable afín."""
    ctx = ctx or f.ctx
    _validar(f)
    d = f.degree
    if d < 3:
        return SemilinearMap(ctx.GF.Zeros((0, 0)), -1, DifferentialBasis(d, ctx))
    afin, carta = _carta_afin(f)
    base = DifferentialBasis(d, ctx, carta)
    p = ctx.p
    g = poly_pow(afin, p - 1)
    n = len(base)
    M = ctx.GF.Zeros((n, n))
    for j, (a, b) in enumerate(base):
        derivada = poly_mul(g, MultiPoly.monomial(ctx, (a, b)))
        for _ in range(p - 1):
            derivada = derivada.derivative(0).derivative(1)
        for i, (u, v) in enumerate(base):
            M[i, j] = elem_pow_p(derivada.coeff((p * u, p * v)), -1)
    return SemilinearMap(M, -1, base)


@dataclass(frozen=True)
class DualityReport:
    frobenius_sigma: int
    cartier_sigma: int
    frobenius_a: int
    cartier_a: int
    chart: str

    @property
    def passed(self):
        return self.frobenius_sigma == self.cartier_sigma and self.frobenius_a == self.cartier_a

    def a_dict(self):
        return {
            "frobenius": {"sigma": self.frobenius_sigma, "a_number": self.frobenius_a},
            "cartier": {"sigma": self.cartier_sigma, "a_number": self.cartier_a},
            "chart": self.chart,
            "passed": self.passed,
        }


def duality_check(f, ctx=None):
    """Compara rango estable y núcleo de Frobenius sobre H^1(O) y de Cartier sobre H^0(Ω)."""
    F = frobenius_plane(f, ctx)
    C = cartier_plane(f, ctx)
    reporte = DualityReport(
        frobenius_sigma=stable_rank(F),
        cartier_sigma=stable_rank(C),
        frobenius_a=kernel_dim(F),
        cartier_a=kernel_dim(C),
        chart=C.basis.chart,
    )
    if not reporte.passed:
        logger.warning("Dualidad fallida: %s", reporte.a_dict())
    return reporte
