"""
Bases monomiales de la cohomología superior de fibrados de línea en P^n y en
superficies de Hirzebruch, y las aplicaciones "multiplicar y proyectar".

Un monomio α (todas sus entradas >= 1) representa la clase de Čech
prod x_i^(-α_i) en H^top(O(-twist)). Los twists se guardan positivos.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from models.algebra import MultiPoly, null_space
from models.errores import ComputationError, InputError

logger = logging.getLogger(__name__)

BETAS_POR_DEFECTO = "default"


# ==================== AMBIENTE ====================

@dataclass(frozen=True)
class Ambient:
    """
    Espacio ambiente: P^n o la superficie de Hirzebruch H_r.

    Args:
        kind (str): "projective" o "hirzebruch"
        n (int): dimensión del proyectivo (sólo projective)
        r (int): parámetro de Hirzebruch (sólo hirzebruch)
        betas (tuple): vectores de grado de x1..x4 (sólo hirzebruch)
    """

    kind: str
    n: int = None
    r: int = None
    betas: tuple = field(default=None)

    @classmethod
    def projective(cls, n):
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise InputError(f"El espacio proyectivo requiere n >= 2, se recibió {n!r}")
        return cls("projective", n=n)

    @classmethod
    def hirzebruch(cls, r, betas=None):
        if isinstance(r, bool) or not isinstance(r, int) or r < 0:
            raise InputError(f"La superficie de Hirzebruch requiere r >= 0, se recibió {r!r}")
        if betas is None:
            betas = ((1, 0), (-r, 1), (1, 0), (0, 1))
        else:
            betas = tuple(tuple(int(c) for c in b) for b in betas)
            if len(betas) != 4 or any(len(b) != 2 for b in betas):
                raise InputError("beta_vectors debe tener cuatro vectores de dos enteros")
        return cls("hirzebruch", r=r, betas=betas)

    @property
    def nvars(self):
        return self.n + 1 if self.kind == "projective" else 4

    @property
    def weights(self):
        if self.kind == "projective":
            return np.ones((self.nvars, 1), dtype=np.int64)
        return np.array(self.betas, dtype=np.int64)

    @property
    def default_betas(self):
        """True si los vectores β son los de la graduación estándar de este proyecto."""
        return self.kind == "projective" or self.betas == Ambient.hirzebruch(self.r).betas

    def graded(self, f):
        """El mismo polinomio con la graduación de este ambiente."""
        if f.nvars != self.nvars:
            raise InputError(f"El polinomio tiene {f.nvars} variables y el ambiente {self.nvars}")
        if np.array_equal(f.weights, self.weights):
            return f
        return MultiPoly(f.ctx, f.nvars, f.exps, f.coeffs, self.weights)

    def basis(self, twist, ctx):
        if self.kind == "projective":
            return basis_projective(self.n, twist, ctx)
        return basis_hirzebruch(self.r, twist[0], twist[1], ctx, betas=self.betas)

    def __str__(self):
        if self.kind == "projective":
            return f"P^{self.n}"
        return f"H_{self.r}"


# ==================== BASES ====================

class CohomologyBasis:
    """Sucesión ordenada de monomios α que genera H^top(O(-twist))."""

    def __init__(self, ambient, twist, monomials, ctx):
        self._ambient = ambient
        self._twist = twist
        self._monomials = tuple(tuple(int(e) for e in m) for m in monomials)
        self._ctx = ctx
        self._indice = {m: i for i, m in enumerate(self._monomials)}

    @property
    def ambient(self):
        return self._ambient

    @property
    def twist(self):
        return self._twist

    @property
    def monomials(self):
        return self._monomials

    @property
    def ctx(self):
        return self._ctx

    def index(self, monomio):
        return self._indice[tuple(monomio)]

    def __contains__(self, monomio):
        return tuple(monomio) in self._indice

    def __len__(self):
        return len(self._monomials)

    def __iter__(self):
        return iter(self._monomials)

    def as_array(self):
        return np.array(self._monomials, dtype=np.int64).reshape(-1, self._ambient.nvars)

    def labels(self):
        return [list(m) for m in self._monomials]

    def __eq__(self, other):
        if not isinstance(other, CohomologyBasis):
            return NotImplemented
        return (self._ambient == other.ambient and self._twist == other.twist
                and self._monomials == other.monomials and self._ctx == other.ctx)

    __hash__ = None

    def __repr__(self):
        return f"CohomologyBasis({self._ambient}, twist={self._twist}, dim={len(self)})"


def _composiciones(total, partes):
    """Composiciones de `total` en `partes` enteros >= 1, en orden lexicográfico descendente."""
    if partes == 1:
        if total >= 1:
            yield (total,)
        return
    for primero in range(total - partes + 1, 0, -1):
        for resto in _composiciones(total - primero, partes - 1):
            yield (primero,) + resto


def basis_projective(n, m, ctx):
    """
    Base de H^n(P^n, O(-m)): vectores de n+1 entradas >= 1 que suman m.
    Vacía cuando m <= n.
    """
    ambiente = Ambient.projective(n)
    monomios = list(_composiciones(m, n + 1)) if m > n else []
    return CohomologyBasis(ambiente, int(m), monomios, ctx)


def basis_hirzebruch(r, a, b, ctx, betas=None):
    """
    Base de H^2(H_r, O(-a,-b)): α >= (1,1,1,1) con Σ α_i β_i = (a, b),
    en orden lexicográfico ascendente sobre (x1, x2, x3, x4).
    """
    ambiente = Ambient.hirzebruch(r, betas)
    pesos = ambiente.weights
    amplitud = max(abs(int(c)) for c in pesos.reshape(-1))
    cota = max(a + amplitud * b, b)
    if cota < 1:
        return CohomologyBasis(ambiente, (int(a), int(b)), [], ctx)
    rejilla = np.indices((cota,) * 4).reshape(4, -1).T + 1
    coinciden = ((rejilla @ pesos) == np.array([a, b])).all(axis=1)
    return CohomologyBasis(ambiente, (int(a), int(b)), rejilla[coinciden], ctx)


# ==================== VECTORES DE CLASES ====================

class ClassVector:
    """Coordenadas de una clase respecto de una base (de cohomología o de un núcleo)."""

    def __init__(self, basis, coords):
        coords = coords.reshape(-1)
        if len(coords) != len(basis):
            raise InputError(f"Se esperaban {len(basis)} coordenadas, se recibieron {len(coords)}")
        self._basis = basis
        self._coords = coords

    @classmethod
    def zero(cls, basis):
        return cls(basis, basis.ctx.GF.Zeros(len(basis)))

    @classmethod
    def unit(cls, basis, i):
        coords = basis.ctx.GF.Zeros(len(basis))
        coords[i] = 1
        return cls(basis, coords)

    @classmethod
    def of_monomial(cls, basis, monomio):
        return cls.unit(basis, basis.index(monomio))

    @property
    def basis(self):
        return self._basis

    @property
    def coords(self):
        return self._coords

    def is_zero(self):
        return not bool((self._coords != 0).any())

    def nonzero_terms(self):
        etiquetas = list(self._basis)
        return [(etiquetas[i], self._coords[i]) for i in np.flatnonzero(self._coords != 0)]

    def scale(self, c):
        return ClassVector(self._basis, self._coords * c)

    def __add__(self, other):
        if other.basis is not self._basis and other.basis != self._basis:
            raise InputError("Vectores de bases distintas")
        return ClassVector(self._basis, self._coords + other.coords)

    def __eq__(self, other):
        if not isinstance(other, ClassVector):
            return NotImplemented
        return len(self) == len(other) and bool((self._coords == other.coords).all())

    __hash__ = None

    def __len__(self):
        return len(self._coords)

    def __repr__(self):
        return f"ClassVector({[int(c) for c in self._coords]})"


def frobenius_lift(v):
    """
    v^[p]: la clase con monomios p·α y coordenadas elevadas a p, en la base
    de twist p·m.
    """
    base = v.basis
    p = base.ctx.p
    twist = base.twist * p if isinstance(base.twist, int) else tuple(t * p for t in base.twist)
    destino = base.ambient.basis(twist, base.ctx)
    coords = base.ctx.GF.Zeros(len(destino))
    for monomio, c in zip(base.monomials, v.coords):
        coords[destino.index(tuple(p * e for e in monomio))] = c ** p
    return ClassVector(destino, coords)


# ==================== MULTIPLICAR Y PROYECTAR ====================

def _twist_destino(source, f):
    grado = f.degree
    if isinstance(source.twist, int):
        return source.twist - grado
    return (source.twist[0] - grado[0], source.twist[1] - grado[1])


def projection_matrix(source, f, target):
    """
    Matriz (dim target × dim source) de la multiplicación por f seguida de la
    proyección a la cohomología: el término u de f lleva α a α - u cuando
    todas las entradas de α - u son >= 1; los demás términos mueren.
    """
    GF = source.ctx.GF
    T = GF.Zeros((len(target), len(source)))
    if f.is_zero() or len(source) == 0:
        return T
    f = source.ambient.graded(f)
    if not f.is_homogeneous():
        raise InputError("El polinomio debe ser homogéneo para la graduación del ambiente")
    if _twist_destino(source, f) != target.twist:
        raise InputError(
            f"Graduación incompatible: twist {source.twist} menos grado {f.degree} "
            f"no es {target.twist}"
        )
    if len(target) == 0:
        return T
    for j, alfa in enumerate(source.as_array()):
        diferencias = alfa[None, :] - f.exps
        vivos = np.flatnonzero((diferencias >= 1).all(axis=1))
        for t in vivos:
            monomio = tuple(int(e) for e in diferencias[t])
            if monomio not in target:
                raise ComputationError(f"El monomio {monomio} no está en la base destino")
            T[target.index(monomio), j] += f.coeffs[t]
    return T


def mul_project(v, f, target):
    """Clase v·f proyectada sobre `target`."""
    T = projection_matrix(v.basis, f, target)
    if len(target) == 0:
        return ClassVector.zero(target)
    return ClassVector(target, T @ v.coords)


def kernel_intersection(source, polys):
    """
    Base escalonada reducida de la intersección de los núcleos de la
    multiplicación por cada polinomio.

    Returns:
        list[ClassVector]: vectores de la base, en orden de pivote
    """
    if len(source) == 0:
        return []
    GF = source.ctx.GF
    bloques = []
    for f in polys:
        if f.is_zero():
            continue
        f = source.ambient.graded(f)
        destino = source.ambient.basis(_twist_destino(source, f), source.ctx)
        bloques.append(projection_matrix(source, f, destino))
    if bloques:
        apilada = GF(np.vstack([b.view(np.ndarray) for b in bloques]))
    else:
        apilada = GF.Zeros((0, len(source)))
    N = null_space(apilada)
    logger.debug("Núcleo de dimensión %d dentro de %d", len(N), len(source))
    return [ClassVector(source, fila) for fila in N]
