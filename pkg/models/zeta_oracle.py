"""
Oráculo independiente: conteo exhaustivo de puntos sobre F_{q^e},
reconstrucción del numerador P(t) de la función zeta y p-rango como grado
de P(t) mod p.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import galois
import numpy as np

from config import obtener_ajustes
from models.algebra import matrix_rank
from models.errores import BudgetError, ComputationError, InputError

logger = logging.getLogger(__name__)

# Puntos evaluados por bloque
_BLOQUE = 1 << 15


# ==================== CUERPOS DE CONTEO ====================

class _Extension:
    """F_{q^ext} junto con la inmersión de F_q (raíz del módulo de F_q)."""

    def __init__(self, ctx, ext):
        self.ctx = ctx
        self.ext = ext
        if ext == 1:
            self.GF = ctx.GF
            self._raiz = None
        else:
            self.GF = galois.GF(ctx.p ** (ctx.k * ext))
            modulo = galois.Poly(list(ctx.modulus), field=self.GF, order="asc")
            self._raiz = modulo.roots()[0] if ctx.k > 1 else None

    @property
    def orden(self):
        return self.GF.order

    def sumergir(self, coeffs):
        """
        Coeficientes de F_q como elementos de F_{q^ext}.

        Args:
            coeffs (FieldArray): coeficientes sobre F_q (enteros de galois)

        Returns:
            FieldArray: los mismos valores en self.GF
        """
        if self._raiz is None:
            return self.GF([int(c) for c in coeffs]) if len(coeffs) else self.GF.Zeros(0)
        p, k = self.ctx.p, self.ctx.k
        potencias = [self._raiz ** i for i in range(k)]
        valores = []
        for c in coeffs:
            entero = int(c)
            total = self.GF(0)
            for i in range(k):
                entero, digito = divmod(entero, p)
                total = total + self.GF(digito) * potencias[i]
            valores.append(int(total))
        return self.GF(valores) if valores else self.GF.Zeros(0)


def _verificar_presupuesto(curve, ext):
    """
    Rechaza enumeraciones de más de 2^PRANK_ENUM_BITS puntos, aproximadas por
    dim(ambiente)·ext·k·log2(p).

    Raises:
        BudgetError: la estimación excede el tope
    """
    ctx = curve.ctx
    dimension = 2 if curve.ambient.kind == "hirzebruch" else curve.ambient.nvars - 1
    bits = dimension * ext * ctx.k * math.log2(ctx.p)
    tope = obtener_ajustes().bits_enumeracion
    if bits > tope:
        raise BudgetError(
            f"Enumerar los puntos sobre F_{ctx.p}^{ctx.k * ext} en dimensión {dimension} requiere "
            f"{bits:.1f} bits y el tope es {tope} (PRANK_ENUM_BITS)"
        )


def _evaluar(exps, coeffs, puntos):
    """
    Valor de Σ c_t x^{e_t} en cada fila de `puntos`.

    Args:
        exps (ndarray): exponentes, una fila por término
        coeffs (FieldArray): coeficientes ya sumergidos en la extensión
        puntos (FieldArray): N×nvars

    Returns:
        FieldArray: N valores
    """
    total = type(puntos).Zeros(len(puntos))
    for fila, c in zip(exps, coeffs):
        termino = type(puntos).Ones(len(puntos)) * c
        for i, e in enumerate(fila):
            if e:
                termino = termino * puntos[:, i] ** int(e)
        total = total + termino
    return total


class _Ecuaciones:
    """Ecuaciones y (opcionalmente) sus derivadas parciales, sumergidas en la extensión."""

    def __init__(self, polys, extension, derivadas=False):
        self.sistema = [(f.exps, extension.sumergir(f.coeffs)) for f in polys]
        self.parciales = []
        if derivadas:
            for f in polys:
                fila = []
                for i in range(f.nvars):
                    df = f.derivative(i)
                    fila.append((df.exps, extension.sumergir(df.coeffs)))
                self.parciales.append(fila)

    def anulan(self, puntos):
        """Máscara booleana de los puntos que anulan todas las ecuaciones."""
        mascara = np.ones(len(puntos), dtype=bool)
        for exps, coeffs in self.sistema:
            mascara &= np.asarray(_evaluar(exps, coeffs, puntos) == 0)
        return mascara

    def singulares(self, puntos):
        """Máscara de puntos de la variedad donde el jacobiano tiene rango < número de ecuaciones."""
        sobre = self.anulan(puntos)
        resultado = np.zeros(len(puntos), dtype=bool)
        if not sobre.any():
            return resultado
        candidatos = puntos[sobre]
        valores = [[_evaluar(e, c, candidatos) for e, c in fila] for fila in self.parciales]
        GF = type(puntos)
        indices = np.flatnonzero(sobre)
        for j in range(len(candidatos)):
            jacobiano = GF([[int(v[j]) for v in fila] for fila in valores])
            if matrix_rank(jacobiano) < len(self.parciales):
                resultado[indices[j]] = True
        return resultado


# ==================== ENUMERACIÓN DE PUNTOS ====================

def _digitos(indices, base, cantidad):
    """Dígitos en base `base` de cada índice, el más significativo primero (N×cantidad)."""
    columnas = []
    for _ in range(cantidad):
        indices, resto = np.divmod(indices, base)
        columnas.append(resto)
    return np.stack(columnas[::-1], axis=1) if columnas else np.zeros((len(indices), 0), dtype=np.int64)


def _bloques_proyectivos(GF, nvars):
    """
    Cartas de P^n: última coordenada 1; luego última 0 y penúltima 1; etc.
    Produce (posición del 1, inicio, fin) para repartir en hilos.
    """
    Q = GF.order
    for pos in range(nvars - 1, -1, -1):
        total = Q ** pos
        for inicio in range(0, total, _BLOQUE):
            yield pos, inicio, min(inicio + _BLOQUE, total)


def _puntos_proyectivos(GF, nvars, pos, inicio, fin):
    """
    Puntos del bloque [inicio, fin) de la carta con un 1 en `pos` y ceros
    después; las coordenadas previas recorren GF^pos.

    Returns:
        FieldArray: (fin - inicio)×nvars
    """
    Q = GF.order
    indices = np.arange(inicio, fin, dtype=np.int64)
    libres = _digitos(indices, Q, pos)
    cola = np.zeros((len(indices), nvars - pos), dtype=np.int64)
    cola[:, 0] = 1
    return GF(np.hstack([libres, cola]))


def _puntos_hirzebruch(GF):
    """(x1, x3) en {(1, t), (0, 1)} por (x2, x4) en {(s, 1), (1, 0)}."""
    Q = GF.order
    t = np.arange(Q, dtype=np.int64)
    pares13 = np.vstack([np.stack([np.ones(Q, dtype=np.int64), t], axis=1), [[0, 1]]])
    pares24 = np.vstack([np.stack([t, np.ones(Q, dtype=np.int64)], axis=1), [[1, 0]]])
    i, j = np.meshgrid(np.arange(Q + 1), np.arange(Q + 1), indexing="ij")
    a, b = pares13[i.reshape(-1)], pares24[j.reshape(-1)]
    # orden de variables (x1, x2, x3, x4)
    return GF(np.stack([a[:, 0], b[:, 0], a[:, 1], b[:, 1]], axis=1))


def _recorrer(curve, ext, criterio, hilos=None):
    """
    Filtra los puntos racionales que anulan las ecuaciones ("anula") o que
    son singulares ("singular").

    Args:
        curve (CurveSpec): curva a recorrer
        ext (int): grado de la extensión sobre F_q
        criterio (str): "anula" o "singular"
        hilos (int, optional): tope de concurrencia (PRANK_THREADS por defecto)

    Returns:
        list[FieldArray]: puntos hallados, un arreglo por bloque

    Raises:
        InputError: Hirzebruch con vectores β propios
        BudgetError: la enumeración excede PRANK_ENUM_BITS
    """
    if curve.ambient.kind == "hirzebruch" and not curve.ambient.default_betas:
        raise InputError("El conteo en Hirzebruch sólo admite los vectores β por defecto")
    _verificar_presupuesto(curve, ext)
    extension = _Extension(curve.ctx, ext)
    GF = extension.GF
    ecuaciones = _Ecuaciones(curve.polys(), extension, derivadas=criterio == "singular")

    def evaluar(puntos):
        mascara = ecuaciones.singulares(puntos) if criterio == "singular" else ecuaciones.anulan(puntos)
        return puntos[mascara]

    if curve.ambient.kind == "hirzebruch":
        return [evaluar(_puntos_hirzebruch(GF))]

    nvars = curve.ambient.nvars
    hilos = hilos or obtener_ajustes().hilos
    bloques = list(_bloques_proyectivos(GF, nvars))
    with ThreadPoolExecutor(max_workers=hilos) as pool:
        return list(pool.map(lambda b: evaluar(_puntos_proyectivos(GF, nvars, *b)), bloques))


def count_points(curve, ext=1, hilos=None):
    """
    Número de puntos de la curva racionales sobre F_{q^ext}.

    Raises:
        BudgetError: dim·ext·k·log2(p) excede PRANK_ENUM_BITS
    """
    if ext < 1:
        raise InputError(f"La extensión debe ser >= 1, se recibió {ext}")
    total = sum(len(puntos) for puntos in _recorrer(curve, ext, "anula", hilos))
    logger.debug("N_%d = %d", ext, total)
    return total


def probe_singular(curve, max_ext=2, hilos=None):
    """
    Busca puntos singulares racionales sobre F_{q^m}, m = 1..max_ext, y se
    detiene en el primer m con hallazgos. Es sólo una sonda: no encontrar
    nada no prueba que la curva sea lisa.

    Returns:
        list[dict]: {"ext": m, "point": [enteros de galois]}
    """
    hallazgos = []
    for m in range(1, max_ext + 1):
        try:
            bloques = _recorrer(curve, m, "singular", hilos)
        except BudgetError as e:
            logger.warning("Sonda de singularidades detenida en m=%d: %s", m, e)
            break
        for puntos in bloques:
            hallazgos.extend({"ext": m, "point": [int(c) for c in fila]} for fila in puntos)
        if hallazgos:
            break
    return hallazgos


# ==================== FUNCIÓN ZETA ====================

def _verificar_weil(counts, q, g):
    """
    Raises:
        ComputationError: algún N_i se aleja de q^i + 1 más de 2g·q^(i/2)
    """
    for i, N in enumerate(counts, start=1):
        desvio = N - (q ** i + 1)
        if desvio * desvio > 4 * g * g * q ** i:
            raise ComputationError(
                f"N_{i} = {N} viola la cota de Weil para g={g}, q={q}: ¿curva singular?"
            )


def zeta_numerator(counts, q, g):
    """
    Coeficientes c_0..c_{2g} de P(t), con identidades de Newton para c_1..c_g y
    la ecuación funcional c_{2g-i} = q^{g-i}·c_i para el resto.
    """
    if len(counts) != g:
        raise InputError(f"Se necesitan {g} conteos, se recibieron {len(counts)}")
    if g == 0:
        return [1]
    _verificar_weil(counts, q, g)
    sumas = [q ** i + 1 - N for i, N in enumerate(counts, start=1)]
    e = [Fraction(1)]
    for k in range(1, g + 1):
        acumulado = sum((-1) ** (i - 1) * e[k - i] * sumas[i - 1] for i in range(1, k + 1))
        e.append(acumulado / k)
    c = []
    for k, valor in enumerate(e):
        if valor.denominator != 1:
            raise ComputationError(f"Coeficiente c_{k} no entero ({valor}): conteos inconsistentes")
        c.append((-1) ** k * int(valor))
    for i in range(g - 1, -1, -1):
        c.append(q ** (g - i) * c[i])
    return c


def p_rank_from_zeta(P, p):
    """Grado de P(t) reducido mod p."""
    grado = 0
    for i, c in enumerate(P):
        if c % p:
            grado = i
    return grado


@dataclass(frozen=True)
class ZetaData:
    q: int
    p: int
    g: int
    counts: tuple
    numerator: tuple

    @property
    def sigma(self):
        return p_rank_from_zeta(self.numerator, self.p)

    def satisfies_functional_equation(self):
        P = self.numerator
        return all(P[2 * self.g - i] == self.q ** (self.g - i) * P[i] for i in range(self.g + 1))

    def a_dict(self):
        return {
            "q": self.q,
            "g": self.g,
            "counts": list(self.counts),
            "numerator": list(self.numerator),
            "sigma": self.sigma,
        }


def zeta_data(curve, max_ext=None, hilos=None):
    """
    Conteos N_1..N_g, numerador y p-rango de una curva lisa.

    Raises:
        InputError: curva con singularidades declaradas o que no es curva
    """
    if curve.singularities:
        raise InputError("El oráculo zeta sólo acepta curvas lisas (hay singularidades declaradas)")
    if not curve.is_curve:
        raise InputError("El oráculo zeta sólo acepta curvas")
    g = curve.arithmetic_genus()
    if max_ext is not None and max_ext < g:
        raise InputError(f"Se necesitan {g} extensiones para g={g}; --max-ext es {max_ext}")
    ctx = curve.ctx
    counts = tuple(count_points(curve, i, hilos) for i in range(1, g + 1))
    datos = ZetaData(ctx.q, ctx.p, g, counts, tuple(zeta_numerator(list(counts), ctx.q, g)))
    if not datos.satisfies_functional_equation():
        raise ComputationError("El numerador no satisface la ecuación funcional")
    logger.debug("Zeta: %s", datos.a_dict())
    return datos
