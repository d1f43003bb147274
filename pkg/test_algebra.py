"""
Pruebas de la aritmética de cuerpos finitos, los polinomios dispersos y la
eliminación gaussiana exacta.
"""

import numpy as np
import pytest

from models.algebra import (
    MultiPoly,
    _modulo_por_defecto,
    charpoly,
    elem_coeffs,
    elem_format,
    elem_from_coeffs,
    elem_parse,
    elem_pow_p,
    field_make,
    hessenberg,
    matrix_rank,
    null_space,
    poly_coeff,
    poly_coeffs_at,
    poly_mul,
    poly_pow,
    row_echelon,
)
from models.errores import InputError


# ==================== CUERPOS ====================

def test_modulo_por_defecto_de_f4(f4):
    assert f4.modulus == (1, 1, 1)
    assert f4.q == 4
    assert str(f4) == "F_2^2"


def test_modulo_por_defecto_de_f9(f9):
    # t^2 + 1 es el primer irreducible con c0 != 0 en orden ascendente
    assert f9.modulus == (1, 0, 1)


def test_p_no_primo():
    with pytest.raises(InputError):
        field_make(4)
    with pytest.raises(InputError):
        field_make(1)


def test_modulo_reducible():
    with pytest.raises(InputError, match="reducible"):
        field_make(2, 2, [1, 0, 1])


def test_modulo_no_monico():
    with pytest.raises(InputError, match="mónico"):
        field_make(3, modulus=[1, 0, 2])


def test_modulo_explicito_sin_k():
    ctx = field_make(2, modulus=[1, 1, 0, 1])
    assert ctx.k == 3
    assert ctx.q == 8


def test_grado_inconsistente_con_el_modulo():
    with pytest.raises(InputError):
        field_make(2, 3, [1, 1, 1])


def test_generador_satisface_el_modulo(f4):
    g = elem_parse(f4, "g")
    assert g ** 2 == g + f4.one()
    assert g ** 3 == f4.one()


def test_parseo_y_formato(f4, f7):
    assert elem_format(elem_parse(f4, "1 + g")) == "1 + g"
    assert elem_format(elem_parse(f4, "g^2")) == "1 + g"
    assert elem_parse(f7, "-1") == f7.GF(6)
    assert elem_parse(f7, "12") == f7.GF(5)
    assert elem_format(f7.zero()) == "0"
    assert elem_format(f4.zero()) == "0"


@pytest.mark.parametrize("texto", ["", "x", "1++", "g*2", "2**g"])
def test_parseo_invalido(f4, texto):
    with pytest.raises(InputError):
        elem_parse(f4, texto)


def test_coordenadas(f9):
    x = elem_from_coeffs(f9, (2, 1))
    assert elem_coeffs(x) == (2, 1)
    assert elem_format(x) == "2 + g"
    with pytest.raises(InputError):
        elem_from_coeffs(f9, (1,))


def test_frobenius_y_raiz_p(f9):
    for i in range(f9.q):
        x = f9.GF(i)
        assert elem_pow_p(x, 1) == x ** 3
        assert elem_pow_p(elem_pow_p(x, -1), 1) == x
        assert elem_pow_p(x, f9.k) == x


def test_modulo_por_defecto_salta_reducibles():
    # t^2 + 1 es reducible sobre F_5 (2^2 = -1); t^2 + t + 1 no
    assert field_make(5, 2).modulus == (1, 1, 1)
    assert field_make(5, 3).modulus == (1, 0, 1, 1)
    # sobre F_13 se descartan t^2 + 1, t^2 + t + 1 y (t + 1)^2
    assert field_make(13, 2).modulus == (1, 3, 1)


def test_modulo_por_defecto_con_primo_grande():
    # 2^31 - 1 = 3 mod 4, luego t^2 + 1 es irreducible
    assert _modulo_por_defecto(2147483647, 2) == (1, 0, 1)
    assert _modulo_por_defecto(1000003, 2) == (1, 0, 1)
    assert _modulo_por_defecto(2147483647, 1) == (0, 1)


def test_axiomas_de_cuerpo(f9, azar):
    for _ in range(100):
        a, b, c = (f9.GF(azar.randrange(f9.q)) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a + f9.zero() == a
        assert a * f9.one() == a
        if a != 0:
            assert a * (f9.one() / a) == f9.one()


# ==================== POLINOMIOS ====================

def _quintica(ctx, A="1", B="2"):
    return MultiPoly.from_terms(ctx, 3, {
        (5, 0, 0): "1", (0, 3, 2): "1", (1, 1, 3): A, (1, 0, 4): B,
    })


def test_normaliza_terminos_repetidos(f7):
    f = MultiPoly.from_terms(f7, 2, [((1, 0), "3"), ((1, 0), "4"), ((0, 1), "1")])
    assert f.nterms == 1
    assert f.terms() == {(0, 1): f7.one()}


def test_grado_y_homogeneidad(f7):
    f = _quintica(f7)
    assert f.is_homogeneous()
    assert f.degree == 5
    g = f + MultiPoly.monomial(f7, (1, 0, 0))
    assert not g.is_homogeneous()
    with pytest.raises(InputError):
        g.degree


def test_sueno_del_estudiante(f7):
    x_mas_y = MultiPoly.from_terms(f7, 2, {(1, 0): "1", (0, 1): "1"})
    esperado = MultiPoly.from_terms(f7, 2, {(7, 0): "1", (0, 7): "1"})
    assert x_mas_y ** 7 == esperado
    assert x_mas_y.frobenius_twist() == esperado


def test_potencia_de_la_quintica(f7):
    h = poly_pow(_quintica(f7), 6)
    # x^20 y^6 z^4 = (x^5)^4 (y^3 z^2)^2 con coeficiente 15
    assert h.coeff((20, 6, 4)) == f7.GF(1)
    assert h.coeff((0, 0, 30)) == f7.zero()
    assert h.degree == 30


def test_potencia_cero_y_exponente_invalido(f7):
    f = _quintica(f7)
    assert poly_pow(f, 0) == MultiPoly.constant(f7, 3, 1)
    with pytest.raises(InputError):
        poly_pow(f, -1)


def test_producto_conmutativo_y_distributivo(f9, azar):
    def aleatorio():
        return MultiPoly.from_terms(f9, 3, {
            tuple(azar.randrange(4) for _ in range(3)): f9.GF(azar.randrange(1, 9))
            for _ in range(6)
        })

    for _ in range(5):
        a, b, c = aleatorio(), aleatorio(), aleatorio()
        assert poly_mul(a, b) == poly_mul(b, a)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()


def test_cuerpos_distintos(f7, f3):
    with pytest.raises(InputError):
        MultiPoly.monomial(f7, (1, 0)) + MultiPoly.monomial(f3, (1, 0))


def test_derivada_en_caracteristica_p(f7):
    f = MultiPoly.from_terms(f7, 2, {(7, 1): "1", (3, 2): "2"})
    assert f.derivative(0) == MultiPoly.from_terms(f7, 2, {(2, 2): "6"})
    assert f.derivative(1) == MultiPoly.from_terms(f7, 2, {(7, 0): "1", (3, 1): "4"})


def test_deshomogeneizar(f7):
    f = _quintica(f7)
    afin = f.dehomogenize(2)
    assert afin.nvars == 2
    assert afin.terms() == {(5, 0): f7.one(), (0, 3): f7.one(), (1, 1): f7.one(), (1, 0): f7.GF(2)}


def test_coeficientes_en_lote(f7):
    f = _quintica(f7)
    consultas = np.array([[1, 0, 4], [0, 0, 0], [-1, 2, 4], [5, 0, 0]])
    assert list(poly_coeffs_at(f, consultas)) == [2, 0, 0, 1]
    assert poly_coeff(f, (1, 1, 3)) == f7.one()


def test_formato(f4):
    f = MultiPoly.from_terms(f4, 3, {(3, 3, 0): "1", (0, 0, 6): "g"})
    assert f.format() == "g*z^6 + x^3*y^3"
    assert MultiPoly(f4, 3).format() == "0"


# ==================== ÁLGEBRA LINEAL ====================

def test_forma_escalonada(f7):
    M = f7.GF([[1, 2], [2, 4]])
    R, pivotes = row_echelon(M)
    assert pivotes == (0,)
    assert matrix_rank(M) == 1
    N = null_space(M)
    assert N.shape == (1, 2)
    assert (M @ N.T == 0).all()
    assert N[0, 0] == 1


def test_nucleo_de_matriz_invertible(f7):
    assert null_space(f7.GF.Identity(3)).shape == (0, 3)


def test_rango_aleatorio_contra_galois(f9, azar):
    for _ in range(10):
        filas, columnas = azar.randrange(1, 6), azar.randrange(1, 6)
        M = f9.GF([[azar.randrange(9) if azar.random() < 0.6 else 0 for _ in range(columnas)]
                   for _ in range(filas)])
        assert matrix_rank(M) == np.linalg.matrix_rank(M)
        N = null_space(M)
        assert len(N) == columnas - matrix_rank(M)
        if len(N):
            assert (M @ N.T == 0).all()


def test_potencia_p_es_frobenius_sobre_polinomios(f4, azar):
    for _ in range(50):
        a = MultiPoly.from_terms(f4, 3, {
            tuple(azar.randrange(5) for _ in range(3)): f4.GF(azar.randrange(1, 4))
            for _ in range(azar.randrange(1, 6))
        })
        assert poly_pow(a, 2) == a.frobenius_twist()


def test_grado_del_producto(f7):
    f = _quintica(f7)
    g = MultiPoly.from_terms(f7, 3, {(1, 1, 0): "1", (0, 0, 2): "3"})
    assert (f * g).degree == 7


def _poli_aleatorio(ctx, azar, nvars=3, grado=4):
    return MultiPoly.from_terms(ctx, nvars, [
        (tuple(azar.randrange(grado + 1) for _ in range(nvars)), ctx.GF(azar.randrange(ctx.q)))
        for _ in range(azar.randrange(1, 6))
    ])


def test_producto_asociativo(f9, azar):
    for _ in range(20):
        a, b, c = (_poli_aleatorio(f9, azar) for _ in range(3))
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))


# ==================== POLINOMIO CARACTERÍSTICO ====================

def _matriz_aleatoria(ctx, azar, n, densidad=0.6):
    return ctx.GF([[azar.randrange(ctx.q) if azar.random() < densidad else 0 for _ in range(n)]
                   for _ in range(n)])


def _determinante(M):
    A = M.copy()
    n = A.shape[0]
    det = type(M)(1)
    for j in range(n):
        filas = np.flatnonzero(A[j:, j] != 0)
        if len(filas) == 0:
            return type(M)(0)
        i = j + int(filas[0])
        if i != j:
            A[[i, j]] = A[[j, i]]
            det = -det
        det = det * A[j, j]
        for r in range(j + 1, n):
            A[r, :] -= (A[r, j] / A[j, j]) * A[j, :]
    return det


def _evaluar_en_matriz(coeficientes, M):
    GF = type(M)
    R = GF.Zeros(M.shape)
    identidad = GF.Identity(M.shape[0])
    for c in coeficientes:
        R = R @ M + c * identidad
    return R


def test_polinomio_caracteristico_1x1(f3):
    assert [int(c) for c in charpoly(f3.GF([[2]]))] == [1, 1]
    assert [int(c) for c in charpoly(f3.GF([[0]]))] == [1, 0]


def test_polinomio_caracteristico_de_nilpotente(f7):
    M = f7.GF([[0, 3, 1, 5], [0, 0, 2, 6], [0, 0, 0, 4], [0, 0, 0, 0]])
    assert [int(c) for c in charpoly(M)] == [1, 0, 0, 0, 0]


def test_polinomio_caracteristico_no_cuadrado(f7):
    with pytest.raises(InputError):
        charpoly(f7.GF.Zeros((2, 3)))


@pytest.mark.parametrize("n", range(1, 13))
def test_traza_determinante_y_cayley_hamilton(f9, azar, n):
    M = _matriz_aleatoria(f9, azar, n)
    c = charpoly(M)
    assert len(c) == n + 1
    assert c[0] == 1
    traza = f9.zero()
    for i in range(n):
        traza = traza + M[i, i]
    assert c[1] == -traza
    det = _determinante(M)
    assert c[n] == (det if n % 2 == 0 else -det)
    assert (_evaluar_en_matriz(c, M) == 0).all()


@pytest.mark.parametrize("densidad", [0.2, 0.5, 1.0])
def test_forma_de_hessenberg(f4, azar, densidad):
    for n in (3, 6, 10):
        M = _matriz_aleatoria(f4, azar, n, densidad)
        H = hessenberg(M)
        for i in range(n):
            for j in range(i - 1):
                assert H[i, j] == 0
        assert (charpoly(H) == charpoly(M)).all()
        assert matrix_rank(H) == matrix_rank(M)
