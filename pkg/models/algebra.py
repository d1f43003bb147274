"""
Aritmética exacta en F_p y F_{p^k} y polinomios multivariados dispersos.

Los elementos del cuerpo son escalares de galois (FieldArray de dimensión 0).
FieldCtx guarda p, k, el polinomio módulo (coeficientes ascendentes) y la
clase de cuerpo que construye galois. Todos los valores son inmutables.
"""

import logging
import re
from dataclasses import dataclass, field

import galois
import numpy as np

from models.errores import InputError

logger = logging.getLogger(__name__)

MAX_PRIMO = 2 ** 31

# Tope de pares término a término por bloque en poly_mul
_MAX_PARES = 1 << 20

_CONSTANTE = re.compile(r"^(\d+)$")
_POTENCIA = re.compile(r"^(?:(\d+)\*)?g(?:\^(\d+))?$")


# ==================== CUERPOS FINITOS ====================

@dataclass(frozen=True)
class FieldCtx:
    """
    Contexto de un cuerpo F_{p^k}.

    Args:
        p (int): característica
        k (int): grado de la extensión
        modulus (tuple): k+1 coeficientes en F_p, orden ascendente, mónico
        GF (type): clase de cuerpo de galois (no participa en la igualdad)
    """

    p: int
    k: int
    modulus: tuple
    GF: type = field(default=None, compare=False, repr=False)

    @property
    def q(self):
        return self.p ** self.k

    @property
    def generator(self):
        """Raíz g del módulo, expresada como elemento del cuerpo."""
        if self.k == 1:
            return self.GF((-self.modulus[0]) % self.p)
        # En la representación entera de galois, el entero p es el polinomio "g"
        return self.GF(self.p)

    def zero(self):
        return self.GF(0)

    def one(self):
        return self.GF(1)

    def __str__(self):
        return f"F_{self.p}^{self.k}" if self.k > 1 else f"F_{self.p}"


def _es_irreducible(p, modulus):
    if len(modulus) == 2:
        return True
    return galois.Poly(list(modulus), field=galois.GF(p), order="asc").is_irreducible()


def _candidatos(p, k):
    """(c0, ..., c_{k-1}) con c0 >= 1 en orden lexicográfico, sin materializar range(p)."""
    actual = [1] + [0] * (k - 1)
    while True:
        yield tuple(actual)
        i = k - 1
        while i >= 0 and actual[i] == p - 1:
            actual[i] = 0
            i -= 1
        if i < 0:
            return
        actual[i] += 1


def _modulo_por_defecto(p, k):
    """Primer mónico irreducible de grado k con los coeficientes en orden ascendente."""
    if k == 1:
        return (0, 1)
    for cola in _candidatos(p, k):
        modulo = cola + (1,)
        if _es_irreducible(p, modulo):
            return modulo
    raise InputError(f"No hay mónicos irreducibles de grado {k} sobre F_{p}")


def field_make(p, k=None, modulus=None):
    """
    Construye el contexto de F_{p^k}.

    Args:
        p (int): primo, 2 <= p <= 2^31
        k (int, optional): grado de la extensión (1 por defecto; con modulus debe coincidir)
        modulus (list, optional): coeficientes ascendentes de un mónico irreducible

    Returns:
        FieldCtx: contexto del cuerpo

    Raises:
        InputError: p no primo, módulo no mónico o reducible
    """
    if isinstance(p, bool) or not isinstance(p, int) or p < 2 or p > MAX_PRIMO:
        raise InputError(f"p debe ser un primo entre 2 y 2^31, se recibió {p!r}")
    if not galois.is_prime(p):
        raise InputError(f"{p} no es primo")

    if modulus is None:
        k = 1 if k is None else k
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise InputError(f"El grado k debe ser >= 1, se recibió {k!r}")
        modulus = _modulo_por_defecto(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2:
            raise InputError("El módulo debe tener grado >= 1")
        if k is not None and k != len(modulus) - 1:
            raise InputError(f"El módulo tiene grado {len(modulus) - 1} pero k = {k}")
        if modulus[-1] != 1:
            raise InputError("El módulo debe ser mónico")
        if not _es_irreducible(p, modulus):
            raise InputError(f"El módulo {list(modulus)} es reducible sobre F_{p}")
        k = len(modulus) - 1

    if k == 1:
        GF = galois.GF(p)
    else:
        irreducible = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
        GF = galois.GF(p ** k, irreducible_poly=irreducible)
    logger.debug("Cuerpo F_%d^%d con módulo %s", p, k, list(modulus))
    return FieldCtx(p, k, modulus, GF)


def elem(ctx, valor):
    """Entero (reducido mod p) como elemento del cuerpo primo."""
    return ctx.GF(int(valor) % ctx.p)


def elem_from_coeffs(ctx, coeffs):
    """Elemento con coordenadas `coeffs` en la base 1, g, ..., g^{k-1}."""
    if len(coeffs) != ctx.k:
        raise InputError(f"Se esperaban {ctx.k} coordenadas, se recibieron {len(coeffs)}")
    return ctx.GF(sum((int(c) % ctx.p) * ctx.p ** i for i, c in enumerate(coeffs)))


def elem_coeffs(x):
    """Coordenadas de x en la base de potencias del generador (orden ascendente)."""
    GF = type(x)
    p, k = GF.characteristic, GF.degree
    entero = int(x)
    coords = []
    for _ in range(k):
        entero, resto = divmod(entero, p)
        coords.append(resto)
    return tuple(coords)


def elem_pow_p(x, e):
    """
    Devuelve x^(p^e). Con e negativo da raíces p-ésimas (el cuerpo es perfecto).
    Como Frobenius tiene orden k, basta el exponente p^(e mod k).
    """
    GF = type(x)
    p, k = GF.characteristic, GF.degree
    return x ** (p ** (e % k))


def elem_parse(ctx, texto):
    """
    Interpreta `c0 + c1*g + c2*g^2 + ...` (se admiten signos '-').
    Los enteros se reducen módulo p.
    """
    if not isinstance(texto, str):
        if isinstance(texto, int) and not isinstance(texto, bool):
            return elem(ctx, texto)
        raise InputError(f"Coeficiente inválido: {texto!r}")
    s = "".join(texto.split())
    partes = re.findall(r"[+-]?[^+-]+", s)
    if not s or "".join(partes) != s:
        raise InputError(f"Coeficiente mal formado: '{texto}'")

    gen = ctx.generator
    total = ctx.zero()
    for parte in partes:
        negativo = parte.startswith("-")
        cuerpo = parte.lstrip("+-")
        constante = _CONSTANTE.match(cuerpo)
        potencia = _POTENCIA.match(cuerpo)
        if constante:
            valor = elem(ctx, int(constante.group(1)))
        elif potencia:
            factor = int(potencia.group(1)) if potencia.group(1) else 1
            exponente = int(potencia.group(2)) if potencia.group(2) else 1
            valor = elem(ctx, factor) * gen ** exponente
        else:
            raise InputError(f"Término desconocido '{parte}' en el coeficiente '{texto}'")
        total = total - valor if negativo else total + valor
    return total


def elem_format(x):
    """Forma canónica `c0 + c1*g + ...`; "0" para el cero."""
    if type(x).degree == 1:
        return str(int(x))
    partes = []
    for i, c in enumerate(elem_coeffs(x)):
        if c == 0:
            continue
        if i == 0:
            partes.append(str(c))
        else:
            base = "g" if i == 1 else f"g^{i}"
            partes.append(base if c == 1 else f"{c}*{base}")
    return " + ".join(partes) if partes else "0"


# ==================== POLINOMIOS DISPERSOS ====================

def _pesos(nvars, weights):
    if weights is None:
        return np.ones((nvars, 1), dtype=np.int64)
    pesos = np.asarray(weights, dtype=np.int64)
    if pesos.ndim == 1:
        pesos = pesos.reshape(-1, 1)
    if pesos.shape[0] != nvars:
        raise InputError(f"Se esperaban {nvars} vectores de peso, se recibieron {pesos.shape[0]}")
    return pesos


def _como_arreglo(ctx, coeffs):
    if isinstance(coeffs, galois.FieldArray):
        if type(coeffs) is not ctx.GF:
            raise InputError("Coeficientes de otro cuerpo")
        return coeffs.reshape(-1)
    valores = [int(c) for c in coeffs]
    if not valores:
        return ctx.GF.Zeros(0)
    return ctx.GF(valores)


def _concatenar(ctx, arreglos):
    arreglos = [a for a in arreglos if a.size]
    if not arreglos:
        return ctx.GF.Zeros(0)
    return ctx.GF(np.concatenate([a.view(np.ndarray) for a in arreglos]))


def _normalizar(ctx, nvars, exps, coeffs):
    """Agrupa exponentes repetidos, suma sus coeficientes y descarta ceros."""
    if len(exps) == 0:
        return np.zeros((0, nvars), dtype=np.int64), ctx.GF.Zeros(0)
    if (exps < 0).any():
        raise InputError("Los exponentes deben ser no negativos")
    filas, inversa = np.unique(exps, axis=0, return_inverse=True)
    acumulado = ctx.GF.Zeros(len(filas))
    np.add.at(acumulado, inversa.reshape(-1), coeffs)
    vivos = acumulado != 0
    return filas[vivos], acumulado[vivos]


class MultiPoly:
    """
    Polinomio disperso sobre F_{p^k}: matriz de exponentes (términos × variables),
    vector de coeficientes y pesos por variable (1 por variable para el grado
    total, vectores de Z² en el modo Hirzebruch).
    Se normaliza al construirse y no se modifica después.
    """

    def __init__(self, ctx, nvars, exps=None, coeffs=None, weights=None):
        self._ctx = ctx
        self._nvars = int(nvars)
        self._weights = _pesos(self._nvars, weights)
        if exps is None:
            exps, coeffs = np.zeros((0, self._nvars), dtype=np.int64), ctx.GF.Zeros(0)
        exps = np.asarray(exps, dtype=np.int64).reshape(-1, self._nvars)
        coeffs = _como_arreglo(ctx, coeffs)
        if len(exps) != len(coeffs):
            raise InputError("Cantidad distinta de exponentes y coeficientes")
        self._exps, self._coeffs = _normalizar(ctx, self._nvars, exps, coeffs)
        self._exps.flags.writeable = False
        self._weights.flags.writeable = False

    # ==================== CONSTRUCTORES ====================

    @classmethod
    def from_terms(cls, ctx, nvars, terms, weights=None):
        """
        Crea el polinomio desde un diccionario {exponentes: coeficiente} o una
        secuencia de pares. El coeficiente puede ser elemento, entero o texto.
        """
        pares = terms.items() if hasattr(terms, "items") else terms
        exps, coeffs = [], []
        for exponentes, coeficiente in pares:
            if len(exponentes) != nvars:
                raise InputError(f"El término {tuple(exponentes)} no tiene {nvars} exponentes")
            exps.append([int(e) for e in exponentes])
            if isinstance(coeficiente, galois.FieldArray):
                coeffs.append(int(coeficiente))
            else:
                coeffs.append(int(elem_parse(ctx, coeficiente)))
        return cls(ctx, nvars, np.array(exps, dtype=np.int64).reshape(-1, nvars), coeffs, weights)

    @classmethod
    def constant(cls, ctx, nvars, valor, weights=None):
        c = valor if isinstance(valor, galois.FieldArray) else elem_parse(ctx, valor)
        return cls(ctx, nvars, np.zeros((1, nvars), dtype=np.int64), [int(c)], weights)

    @classmethod
    def monomial(cls, ctx, exponentes, valor=1, weights=None):
        c = valor if isinstance(valor, galois.FieldArray) else elem_parse(ctx, valor)
        return cls(ctx, len(exponentes), np.array([exponentes], dtype=np.int64), [int(c)], weights)

    # ==================== PROPIEDADES ====================

    @property
    def ctx(self):
        return self._ctx

    @property
    def nvars(self):
        return self._nvars

    @property
    def exps(self):
        return self._exps

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def weights(self):
        return self._weights

    @property
    def nterms(self):
        return len(self._exps)

    def is_zero(self):
        return self.nterms == 0

    def items(self):
        for fila, c in zip(self._exps, self._coeffs):
            yield tuple(int(e) for e in fila), c

    def terms(self):
        return dict(self.items())

    def degrees(self):
        """Grado ponderado de cada término (términos × dimensión de la graduación)."""
        return self._exps @ self._weights

    def is_homogeneous(self):
        grados = self.degrees()
        return len(grados) == 0 or bool((grados == grados[0]).all())

    @property
    def degree(self):
        """Grado (entero o par) de un polinomio homogéneo no nulo."""
        if self.is_zero():
            raise InputError("El polinomio nulo no tiene grado")
        if not self.is_homogeneous():
            raise InputError("El polinomio no es homogéneo para su graduación")
        grado = self.degrees()[0]
        return int(grado[0]) if len(grado) == 1 else tuple(int(g) for g in grado)

    # ==================== OPERACIONES ====================

    def _compatible(self, other):
        if not isinstance(other, MultiPoly):
            raise InputError("Se esperaba un MultiPoly")
        if other.ctx != self.ctx:
            raise InputError(f"Cuerpos distintos: {self.ctx} y {other.ctx}")
        if other.nvars != self.nvars:
            raise InputError(f"Número de variables distinto: {self.nvars} y {other.nvars}")
        if not np.array_equal(other.weights, self.weights):
            raise InputError("Graduaciones incompatibles")

    def _con(self, exps, coeffs):
        return MultiPoly(self._ctx, self._nvars, exps, coeffs, self._weights)

    def __add__(self, other):
        self._compatible(other)
        exps = np.vstack([self._exps, other.exps])
        return self._con(exps, _concatenar(self._ctx, [self._coeffs, other.coeffs]))

    def __neg__(self):
        return self._con(self._exps, -self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __pow__(self, e):
        return poly_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.ctx == other.ctx and self.nvars == other.nvars
                and np.array_equal(self.weights, other.weights)
                and np.array_equal(self._exps, other.exps)
                and bool((self._coeffs == other.coeffs).all()))

    __hash__ = None

    def scale(self, c):
        c = c if isinstance(c, galois.FieldArray) else elem_parse(self._ctx, c)
        return self._con(self._exps, self._coeffs * c)

    def coeff(self, exponentes):
        return poly_coeff(self, exponentes)

    def frobenius_twist(self):
        """Frobenius sobre el polinomio: exponentes por p y coeficientes a la p."""
        return self._con(self._exps * self._ctx.p, self._coeffs ** self._ctx.p)

    def derivative(self, var):
        """Derivada parcial formal respecto de la variable `var`."""
        mascara = self._exps[:, var] > 0
        exps = self._exps[mascara].copy()
        factores = self._ctx.GF(exps[:, var] % self._ctx.p)
        exps[:, var] -= 1
        return self._con(exps, self._coeffs[mascara] * factores)

    def dehomogenize(self, var):
        """Evalúa la variable `var` en 1 (carta afín); pierde la graduación."""
        exps = np.delete(self._exps, var, axis=1)
        return MultiPoly(self._ctx, self._nvars - 1, exps, self._coeffs)

    def format(self, nombres=None):
        nombres = nombres or _nombres_por_defecto(self._nvars)
        if self.is_zero():
            return "0"
        terminos = []
        for exponentes, c in self.items():
            factores = [n if e == 1 else f"{n}^{e}" for n, e in zip(nombres, exponentes) if e]
            texto = elem_format(c)
            if " " in texto and factores:
                texto = f"({texto})"
            if not factores:
                terminos.append(texto)
            elif texto == "1":
                terminos.append("*".join(factores))
            else:
                terminos.append("*".join([texto] + factores))
        return " + ".join(terminos)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.format()!r}, nvars={self._nvars}, ctx={self._ctx})"


def _nombres_por_defecto(nvars):
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"x{i}" for i in range(nvars)]


def poly_mul(a, b):
    """
    Producto disperso: suma de exponentes y producto exterior de coeficientes,
    por bloques, agrupando luego los términos repetidos.
    """
    a._compatible(b)
    if a.is_zero() or b.is_zero():
        return MultiPoly(a.ctx, a.nvars, weights=a.weights)
    bloque = max(1, _MAX_PARES // b.nterms)
    exps_parciales, coeffs_parciales = [], []
    for inicio in range(0, a.nterms, bloque):
        ea = a.exps[inicio:inicio + bloque]
        ca = a.coeffs[inicio:inicio + bloque]
        exps = (ea[:, None, :] + b.exps[None, :, :]).reshape(-1, a.nvars)
        coeffs = np.multiply.outer(ca, b.coeffs).reshape(-1)
        parcial = MultiPoly(a.ctx, a.nvars, exps, coeffs, a.weights)
        exps_parciales.append(parcial.exps)
        coeffs_parciales.append(parcial.coeffs)
    if len(exps_parciales) == 1:
        return parcial
    return MultiPoly(a.ctx, a.nvars, np.vstack(exps_parciales),
                     _concatenar(a.ctx, coeffs_parciales), a.weights)


def poly_pow(a, e):
    """a^e por exponenciación binaria."""
    if isinstance(e, bool) or not isinstance(e, (int, np.integer)) or e < 0:
        raise InputError(f"El exponente debe ser un entero >= 0, se recibió {e!r}")
    resultado = MultiPoly.constant(a.ctx, a.nvars, 1, a.weights)
    base = a
    e = int(e)
    while e:
        if e & 1:
            resultado = poly_mul(resultado, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    logger.debug("Potencia con %d términos", resultado.nterms)
    return resultado


def poly_coeff(a, exponentes):
    """Coeficiente del monomio `exponentes` (cero si no aparece)."""
    if len(exponentes) != a.nvars:
        raise InputError(f"Se esperaban {a.nvars} exponentes")
    return poly_coeffs_at(a, np.asarray([exponentes], dtype=np.int64))[0]


def poly_coeffs_at(a, exponentes):
    """
    Coeficientes de muchos monomios a la vez.

    Args:
        a (MultiPoly): polinomio
        exponentes (ndarray): matriz (consultas × nvars); se admiten entradas negativas

    Returns:
        FieldArray: un coeficiente por fila (cero donde el monomio no aparece)
    """
    consultas = np.asarray(exponentes, dtype=np.int64).reshape(-1, a.nvars)
    resultado = a.ctx.GF.Zeros(len(consultas))
    if a.is_zero() or len(consultas) == 0:
        return resultado
    todos = np.vstack([a.exps, consultas])
    _, inversa = np.unique(todos, axis=0, return_inverse=True)
    inversa = inversa.reshape(-1)
    posicion = np.full(int(inversa.max()) + 1, -1, dtype=np.int64)
    posicion[inversa[:a.nterms]] = np.arange(a.nterms)
    encontrados = posicion[inversa[a.nterms:]]
    presentes = encontrados >= 0
    resultado[presentes] = a.coeffs[encontrados[presentes]]
    return resultado


# ==================== ÁLGEBRA LINEAL EXACTA ====================

def row_echelon(M):
    """
    Eliminación de Gauss-Jordan con el primer pivote no nulo de cada columna.

    Returns:
        tuple: (forma escalonada reducida, índices de columnas pivote)
    """
    R = M.copy()
    filas, columnas = R.shape
    pivotes = []
    fila = 0
    for col in range(columnas):
        if fila >= filas:
            break
        candidatos = np.flatnonzero(R[fila:, col] != 0)
        if len(candidatos) == 0:
            continue
        pivote = fila + int(candidatos[0])
        if pivote != fila:
            R[[fila, pivote]] = R[[pivote, fila]]
        R[fila] = R[fila] / R[fila, col]
        factores = R[:, col].copy()
        factores[fila] = 0
        R -= np.multiply.outer(factores, R[fila])
        pivotes.append(col)
        fila += 1
    return R, tuple(pivotes)


def matrix_rank(M):
    if M.size == 0:
        return 0
    return len(row_echelon(M)[1])


def null_space(M):
    """
    Núcleo por la derecha de M como filas en forma escalonada reducida
    (base canónica: pivotes en el orden de las columnas).
    """
    GF = type(M)
    filas, n = M.shape
    if n == 0:
        return GF.Zeros((0, 0))
    if filas == 0:
        return GF.Identity(n)
    R, pivotes = row_echelon(M)
    libres = [c for c in range(n) if c not in pivotes]
    N = GF.Zeros((len(libres), n))
    for i, c in enumerate(libres):
        N[i, c] = 1
        for r, pc in enumerate(pivotes):
            N[i, pc] = -R[r, c]
    if not libres:
        return N
    return row_echelon(N)[0]


def hessenberg(M):
    """
    Forma de Hessenberg superior semejante a M: H[i, j] = 0 para i > j + 1.
    Cada paso es un intercambio o una eliminación aplicada a filas y a
    columnas a la vez.
    """
    H = M.copy()
    n = H.shape[0]
    for j in range(n - 2):
        candidatos = np.flatnonzero(H[j + 1:, j] != 0)
        if len(candidatos) == 0:
            continue
        pivote = j + 1 + int(candidatos[0])
        if pivote != j + 1:
            H[[j + 1, pivote]] = H[[pivote, j + 1]]
            H[:, [j + 1, pivote]] = H[:, [pivote, j + 1]]
        for r in range(j + 2, n):
            if H[r, j] == 0:
                continue
            u = H[r, j] / H[j + 1, j]
            H[r, :] -= u * H[j + 1, :]
            H[:, j + 1] += u * H[:, r]
    return H


def charpoly(M):
    """
    Polinomio característico det(xI - M) por reducción a Hessenberg.

    Args:
        M (FieldArray): matriz cuadrada n×n

    Returns:
        FieldArray: n+1 coeficientes en orden descendente (mónico)
    """
    GF = type(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise InputError(f"La matriz debe ser cuadrada, es {M.shape[0]}×{M.shape[1]}")
    H = hessenberg(M)
    # P[m]: polinomio característico del bloque principal m×m, ascendente
    P = [GF.Zeros(n + 1)]
    P[0][0] = 1
    for m in range(n):
        siguiente = GF.Zeros(n + 1)
        siguiente[1:] = P[m][:-1]
        siguiente -= H[m, m] * P[m]
        producto = GF(1)
        for i in range(m - 1, -1, -1):
            producto = producto * H[i + 1, i]
            if producto == 0:
                break
            siguiente -= H[i, m] * producto * P[i]
        P.append(siguiente)
    return P[n][::-1]
