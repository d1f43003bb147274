"""
Invariantes numéricos de mapas semilineales: rango estable (p-rango),
dimensión del núcleo (número a), iterados y ordinariedad.
"""

import logging
import math
from dataclasses import dataclass

from models.algebra import charpoly, elem_format, elem_pow_p, matrix_rank
from models.errores import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantBundle:
    """
    Args:
        dim (int): tamaño de la base (g ó p_a)
        sigma (int): rango estable
        a_number (int): dimensión del núcleo de una aplicación
        ordinary (bool): sigma == dim
        composite_charpoly (tuple): coeficientes (descendentes) del polinomio
            característico del compuesto lineal
    """

    dim: int
    sigma: int
    a_number: int
    ordinary: bool
    composite_charpoly: tuple

    @property
    def zero_root_multiplicity(self):
        multiplicidad = 0
        for c in reversed(self.composite_charpoly):
            if c != "0":
                break
            multiplicidad += 1
        return multiplicidad

    def a_dict(self):
        return {
            "dim": self.dim,
            "sigma": self.sigma,
            "a_number": self.a_number,
            "ordinary": self.ordinary,
            "charpoly": list(self.composite_charpoly),
        }


def composite(M, t):
    """
    Compuesto lineal de t pasos: A · A^[p] · ... · A^[p^(t-1)], con potencias
    1/p si el torcimiento es -1.

    Args:
        M (SemilinearMap): mapa a iterar
        t (int): número de pasos; t <= 0 da la identidad

    Returns:
        FieldArray: matriz dim×dim del iterado t-ésimo
    """
    A = M.matrix
    if t <= 0:
        return type(A).Identity(M.dim)
    resultado = A.copy()
    for i in range(1, t):
        resultado = resultado @ elem_pow_p(A, M.twist * i)
    return resultado


def rank_sequence(M, t_max):
    """
    Rangos de los iterados 1..t_max, acumulando el compuesto paso a paso.

    Returns:
        list: t_max enteros no crecientes (vacía si t_max < 1)
    """
    if t_max < 1:
        return []
    A = M.matrix
    if M.dim == 0:
        return [0] * t_max
    rangos = []
    actual = A.copy()
    rangos.append(matrix_rank(actual))
    for i in range(1, t_max):
        actual = actual @ elem_pow_p(A, M.twist * i)
        rangos.append(matrix_rank(actual))
    return rangos


def stable_rank(M):
    """Rango del compuesto de g = dim pasos."""
    if M.dim == 0:
        return 0
    return matrix_rank(composite(M, M.dim))


def kernel_dim(M):
    """dim - rango: Frobenius entrada a entrada es biyectivo, así que el núcleo lineal basta."""
    return M.dim - matrix_rank(M.matrix)


def apply_iterate(M, v, t):
    """
    Aplica el mapa t veces a un vector de clases.

    Raises:
        InputError: t negativo
    """
    if t < 0:
        raise InputError(f"El número de iteraciones debe ser >= 0, se recibió {t}")
    for _ in range(t):
        v = M.apply(v)
    return v


def is_ordinary(M):
    # rango completo de A equivale a sigma == dim
    return matrix_rank(M.matrix) == M.dim


def invariants(M):
    """
    Calcula el paquete de invariantes. El polinomio característico se toma del
    compuesto de m = k·ceil(g/k) pasos, que es lineal sobre F_{p^k}.
    """
    g = M.dim
    if g == 0:
        return InvariantBundle(0, 0, 0, True, ("1",))
    k = M.ctx.k
    m = k * math.ceil(g / k)
    lineal = composite(M, m)
    coeficientes = tuple(elem_format(c) for c in charpoly(lineal))
    sigma = stable_rank(M)
    paquete = InvariantBundle(
        dim=g,
        sigma=sigma,
        a_number=kernel_dim(M),
        ordinary=sigma == g,
        composite_charpoly=coeficientes,
    )
    logger.debug("Invariantes: %s", paquete.a_dict())
    return paquete
