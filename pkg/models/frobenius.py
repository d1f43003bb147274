"""
Matriz de la acción de Frobenius sobre H^1(C, O_C) para las tres
presentaciones de curvas: plana, intersección completa y Hirzebruch.

Convención: la columna j es la imagen del j-ésimo vector de la base, y
aplicar el mapa es multiplicar la matriz por las coordenadas elevadas a p
(a 1/p si el torcimiento es -1).
"""

import logging
from dataclasses import dataclass

import numpy as np

from models.algebra import elem_format, elem_pow_p, poly_coeffs_at, poly_pow, MultiPoly
from models.cohomology import (
    Ambient, ClassVector, basis_hirzebruch, basis_projective, kernel_intersection,
)
from models.errores import ComputationError, InputError

logger = logging.getLogger(__name__)


class KernelBasis:
    """Base escalonada de un subespacio de una base de cohomología (filas de `vectors`)."""

    def __init__(self, ambient_basis, vectors, pivots):
        self.ambient_basis = ambient_basis
        self.vectors = vectors
        self.pivots = tuple(pivots)

    @property
    def ctx(self):
        return self.ambient_basis.ctx

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.labels())

    def labels(self):
        """Cada vector como diccionario monomio -> coeficiente (texto)."""
        etiquetas = []
        for fila in self.vectors:
            etiquetas.append({
                ",".join(str(e) for e in self.ambient_basis.monomials[i]): elem_format(fila[i])
                for i in np.flatnonzero(fila != 0)
            })
        return etiquetas

    def __eq__(self, other):
        if not isinstance(other, KernelBasis):
            return NotImplemented
        return (self.ambient_basis == other.ambient_basis
                and self.vectors.shape == other.vectors.shape
                and bool((self.vectors == other.vectors).all()))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SemilinearMap:
    """
    Matriz cuadrada sobre F_{p^k} con torcimiento +1 (Frobenius) o -1 (Cartier).

    Args:
        matrix (FieldArray): columnas = imágenes de los vectores de la base
        twist (int): +1 ó -1
        basis: base sobre la que actúa (CohomologyBasis, KernelBasis o DifferentialBasis)
    """

    matrix: object
    twist: int
    basis: object

    def __post_init__(self):
        filas, columnas = self.matrix.shape
        if filas != columnas:
            raise InputError(f"La matriz debe ser cuadrada, es {filas}×{columnas}")
        if filas != len(self.basis):
            raise InputError(f"La matriz tiene dimensión {filas} y la base {len(self.basis)}")
        if self.twist not in (1, -1):
            raise InputError(f"El torcimiento debe ser +1 ó -1, se recibió {self.twist}")

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def ctx(self):
        return self.basis.ctx

    def apply(self, v):
        """Una aplicación semilineal del mapa sobre un ClassVector."""
        if len(v) != self.dim:
            raise InputError(f"El vector tiene {len(v)} coordenadas y el mapa dimensión {self.dim}")
        if self.dim == 0:
            return v
        return ClassVector(v.basis, self.matrix @ elem_pow_p(v.coords, self.twist))

    def rows(self):
        """Matriz fila a fila como textos de coeficientes."""
        return [[elem_format(c) for c in fila] for fila in self.matrix]


def column_images(M):
    """
    Imagen de cada vector de la base como lista de pares (etiqueta, coeficiente),
    omitiendo los ceros.
    """
    etiquetas = list(M.basis)
    imagenes = []
    for j in range(M.dim):
        columna = M.matrix[:, j]
        imagenes.append([(etiquetas[i], elem_format(columna[i])) for i in np.flatnonzero(columna != 0)])
    return imagenes


def _matriz_hasse_witt(h, base, p):
    """Entrada (α', α) = coeficiente de p·α - α' en h."""
    GF = base.ctx.GF
    n = len(base)
    if n == 0:
        return GF.Zeros((0, 0))
    monomios = base.as_array()
    # consulta[i, j] = p·α_j - α'_i
    consultas = p * monomios[None, :, :] - monomios[:, None, :]
    return poly_coeffs_at(h, consultas.reshape(-1, monomios.shape[1])).reshape(n, n)


def _validar_homogeneo(f, nvars, nombre):
    if not isinstance(f, MultiPoly):
        raise InputError(f"{nombre}: se esperaba un MultiPoly")
    if f.nvars != nvars:
        raise InputError(f"{nombre}: se esperaban {nvars} variables, tiene {f.nvars}")
    if f.is_zero():
        raise InputError(f"{nombre}: el polinomio es nulo")
    if not f.is_homogeneous():
        raise InputError(f"{nombre}: el polinomio no es homogéneo")


def frobenius_plane(f, ctx=None):
    """
    Matriz de Hasse-Witt de la curva plana f = 0 sobre la base de
    H^2(P^2, O(-d)).

    Args:
        f (MultiPoly): polinomio homogéneo de grado d en (x, y, z)
        ctx (FieldCtx, optional): cuerpo; por defecto el de f

    Returns:
        SemilinearMap: mapa de torcimiento +1
    """
    ctx = ctx or f.ctx
    _validar_homogeneo(f, 3, "frobenius_plane")
    d = f.degree
    base = basis_projective(2, d, ctx)
    if len(base) == 0:
        return SemilinearMap(ctx.GF.Zeros((0, 0)), 1, base)
    h = poly_pow(f, ctx.p - 1)
    logger.debug("f^(p-1) tiene %d términos", h.nterms)
    return SemilinearMap(_matriz_hasse_witt(h, base, ctx.p), 1, base)


def frobenius_ci(polys, ctx=None):
    """
    Frobenius sobre el grupo superior H^{n-r}(Y, O) de la intersección completa
    Y = {f_1 = ... = f_r = 0} en P^n, calculado dentro del núcleo de la
    multiplicación por cada f_i en H^n(P^n, O(-Σ n_i)).

    Raises:
        InputError: número de variables inconsistente o r fuera de 1..n-1
        ComputationError: una imagen cae fuera del núcleo
    """
    if not polys:
        raise InputError("frobenius_ci necesita al menos una ecuación")
    ctx = ctx or polys[0].ctx
    nvars = polys[0].nvars
    for i, f in enumerate(polys):
        _validar_homogeneo(f, nvars, f"ecuación {i + 1}")
    n = nvars - 1
    if len(polys) > n - 1:
        raise InputError(f"Una intersección completa en P^{n} admite a lo más {n - 1} ecuaciones")

    grados = [f.degree for f in polys]
    fuente = basis_projective(n, sum(grados), ctx)
    nucleo = kernel_intersection(fuente, polys)
    if not nucleo:
        vacia = KernelBasis(fuente, ctx.GF.Zeros((0, len(fuente))), ())
        return SemilinearMap(ctx.GF.Zeros((0, 0)), 1, vacia)

    K = ctx.GF(np.vstack([v.coords.view(np.ndarray) for v in nucleo]))
    pivotes = [int(np.flatnonzero(fila != 0)[0]) for fila in K]

    producto = polys[0]
    for f in polys[1:]:
        producto = producto * f
    h = poly_pow(producto, ctx.p - 1)
    completa = _matriz_hasse_witt(h, fuente, ctx.p)

    # W[:, j] = F(k_j) en coordenadas de la base completa
    W = completa @ (K ** ctx.p).T
    C = W[pivotes, :]
    if not bool((K.T @ C == W).all()):
        raise ComputationError("La imagen de Frobenius no está contenida en el núcleo")
    logger.debug("Intersección completa: núcleo de dimensión %d en %d", len(K), len(fuente))
    return SemilinearMap(C, 1, KernelBasis(fuente, K, pivotes))


def frobenius_hirzebruch(r, f, ctx=None, betas=None):
    """Frobenius de la curva f = 0 en H_r, sobre la base de H^2(H_r, O(-a,-b))."""
    ctx = ctx or f.ctx
    ambiente = Ambient.hirzebruch(r, betas)
    _validar_homogeneo(ambiente.graded(f), 4, "frobenius_hirzebruch")
    f = ambiente.graded(f)
    a, b = f.degree
    if a <= 0 or b <= 0:
        raise InputError(f"El bigrado debe ser positivo, se recibió ({a}, {b})")
    base = basis_hirzebruch(r, a, b, ctx, betas=ambiente.betas)
    if len(base) == 0:
        return SemilinearMap(ctx.GF.Zeros((0, 0)), 1, base)
    h = poly_pow(f, ctx.p - 1)
    return SemilinearMap(_matriz_hasse_witt(h, base, ctx.p), 1, base)
