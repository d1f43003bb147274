"""
Pruebas del operador de Cartier y de la dualidad con Frobenius.
"""

import pytest

from models.algebra import MultiPoly, elem_pow_p, field_make
from models.cartier import (
    DifferentialBasis,
    cartier_by_differentiation,
    cartier_plane,
    duality_check,
)
from models.cohomology import ClassVector
from models.errores import InputError
from models.semilinear import kernel_dim, stable_rank


def _quintica(ctx, A="1", B="2"):
    return MultiPoly.from_terms(ctx, 3, {
        (5, 0, 0): "1", (0, 3, 2): "1", (1, 1, 3): A, (1, 0, 4): B,
    })


def _sextica(ctx):
    return MultiPoly.from_terms(ctx, 3, {
        (3, 3, 0): "1", (3, 0, 3): "1", (0, 3, 3): "1", (0, 0, 6): "g",
    })


def test_base_de_diferenciales(f7):
    base = DifferentialBasis(5, f7)
    assert base.monomials == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert len(DifferentialBasis(3, f7)) == 1
    assert len(DifferentialBasis(2, f7)) == 0


def test_cartier_de_elipticas(f2, f3):
    ordinaria = MultiPoly.from_terms(f2, 3, {(0, 2, 1): "1", (1, 1, 1): "1", (3, 0, 0): "1", (0, 0, 3): "1"})
    supersingular = MultiPoly.from_terms(f3, 3, {(0, 2, 1): "1", (3, 0, 0): "-1", (1, 0, 2): "1"})
    C = cartier_plane(ordinaria)
    assert C.twist == -1
    assert C.rows() == [["1"]]
    assert cartier_plane(supersingular).rows() == [["0"]]


def test_extraccion_coincide_con_derivacion(f7, f4):
    for f in (_quintica(f7), _quintica(f7, "3", "6"), _sextica(f4)):
        extraida = cartier_plane(f)
        derivada = cartier_by_differentiation(f)
        assert extraida.basis.chart == derivada.basis.chart
        assert (extraida.matrix == derivada.matrix).all()


def test_carta_de_reserva(f3):
    # En z = 1 la derivada respecto de y de y^3 + x^2 + x se anula en característica 3
    f = MultiPoly.from_terms(f3, 3, {(0, 3, 0): "1", (2, 0, 1): "1", (1, 0, 2): "1"})
    assert cartier_plane(f).basis.chart == "z=1, dy/f_x"


def test_cartas_degeneradas(f2):
    # x^2 y^2 + z^4 es un cuadrado en característica 2: todas las derivadas se anulan
    f = MultiPoly.from_terms(f2, 3, {(2, 2, 0): "1", (0, 0, 4): "1"})
    with pytest.raises(InputError, match="cartas"):
        cartier_plane(f)


def test_invariantes_de_cartier_en_la_sextica(f4):
    C = cartier_plane(_sextica(f4))
    assert C.dim == 10
    assert stable_rank(C) == 8
    assert kernel_dim(C) == 2


def test_dualidad(f2, f3, f4):
    curvas = [
        MultiPoly.from_terms(f2, 3, {(0, 2, 1): "1", (1, 1, 1): "1", (3, 0, 0): "1", (0, 0, 3): "1"}),
        MultiPoly.from_terms(f3, 3, {(0, 2, 1): "1", (3, 0, 0): "-1", (1, 0, 2): "1"}),
        _sextica(f4),
    ]
    for f in curvas:
        reporte = duality_check(f)
        assert reporte.passed, reporte.a_dict()


def test_reporte_de_dualidad(f4):
    reporte = duality_check(_sextica(f4))
    datos = reporte.a_dict()
    assert datos["frobenius"] == {"sigma": 8, "a_number": 2}
    assert datos["cartier"] == {"sigma": 8, "a_number": 2}
    assert datos["chart"] == "z=1, dx/f_y"
    assert datos["passed"] is True


def test_cartier_rechaza_no_homogeneos(f7):
    with pytest.raises(InputError):
        cartier_plane(MultiPoly.from_terms(f7, 3, {(3, 0, 0): "1", (0, 1, 0): "1"}))


def test_cartier_es_semilineal_inverso(f4, azar):
    C = cartier_plane(_sextica(f4))
    for _ in range(10):
        v = ClassVector(C.basis, f4.GF([azar.randrange(4) for _ in range(C.dim)]))
        w = ClassVector(C.basis, f4.GF([azar.randrange(4) for _ in range(C.dim)]))
        c = f4.GF(azar.randrange(1, 4))
        assert C.apply(v.scale(c)) == C.apply(v).scale(elem_pow_p(c, -1))
        assert C.apply(v + w) == C.apply(v) + C.apply(w)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", [3, 4])
def test_extraccion_y_derivacion_en_curvas_aleatorias(azar, p, d):
    ctx = field_make(p)
    monomios = [(i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i)]
    comparadas = 0
    for _ in range(10):
        f = MultiPoly.from_terms(ctx, 3, [(e, ctx.GF(azar.randrange(p))) for e in monomios])
        try:
            extraida = cartier_plane(f)
        except InputError:
            # nulo o con las tres cartas degeneradas
            continue
        derivada = cartier_by_differentiation(f)
        assert extraida.basis.chart == derivada.basis.chart
        assert (extraida.matrix == derivada.matrix).all()
        comparadas += 1
    assert comparadas >= 5
