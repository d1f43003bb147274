"""
Correcciones por singularidades declaradas de X': dimensión de G, rango tórico,
parte unipotente, género geométrico e invariantes corregidos del modelo liso X.
"""

import logging
from dataclasses import dataclass

from models.errores import InputError

logger = logging.getLogger(__name__)

# Las singularidades no se detectan: el usuario las declara en el archivo de curva.
# Sólo acepto los dos tipos que sé corregir; cualquier otro se rechaza.
TIPOS_VALIDOS = ("ordinary", "cusp")


class SingularityDecl:
    """
    Singularidad declarada: punto múltiple ordinario de multiplicidad m o
    cúspide z^2 = x^r con r impar.
    """

    def __init__(self, kind, multiplicity=None, r=None):
        """
        Args:
            kind (str): "ordinary" o "cusp"
            multiplicity (int, optional): m >= 2 para "ordinary"
            r (int, optional): r >= 3 impar para "cusp"
        """
        self.kind = kind
        self._multiplicity = None
        self._r = None
        if self._kind == "ordinary":
            self.multiplicity = multiplicity
            if r is not None:
                raise InputError("Un punto ordinario no lleva el parámetro r")
        else:
            self.r = r
            if multiplicity is not None:
                raise InputError("Una cúspide no lleva multiplicidad")

    @property
    def kind(self):
        return self._kind

    @kind.setter
    def kind(self, valor):
        if valor not in TIPOS_VALIDOS:
            raise InputError(f"Tipo de singularidad inválido '{valor}'. Debe ser uno de: {', '.join(TIPOS_VALIDOS)}")
        self._kind = valor

    @property
    def multiplicity(self):
        return self._multiplicity

    @multiplicity.setter
    def multiplicity(self, valor):
        if isinstance(valor, bool) or not isinstance(valor, int) or valor < 2:
            raise InputError(f"La multiplicidad debe ser un entero >= 2, se recibió {valor!r}")
        self._multiplicity = valor

    @property
    def r(self):
        return self._r

    @r.setter
    def r(self, valor):
        if isinstance(valor, bool) or not isinstance(valor, int) or valor < 3 or valor % 2 == 0:
            raise InputError(f"La cúspide z^2 = x^r requiere r impar >= 3, se recibió {valor!r}")
        self._r = valor

    @property
    def delta(self):
        if self._kind == "ordinary":
            return self._multiplicity * (self._multiplicity - 1) // 2
        return (self._r - 1) // 2

    @property
    def branches(self):
        return self._multiplicity if self._kind == "ordinary" else 1

    @property
    def toric(self):
        return self.branches - 1

    @property
    def unipotent(self):
        return self.delta - self.toric

    @classmethod
    def crear_desde_dict(cls, datos):
        if not isinstance(datos, dict) or "kind" not in datos:
            raise InputError(f"Declaración de singularidad inválida: {datos!r}")
        sobrantes = set(datos) - {"kind", "multiplicity", "r"}
        if sobrantes:
            raise InputError(f"Claves desconocidas en la singularidad: {', '.join(sorted(sobrantes))}")
        return cls(datos["kind"], datos.get("multiplicity"), datos.get("r"))

    def a_dict(self):
        if self._kind == "ordinary":
            return {"kind": "ordinary", "multiplicity": self._multiplicity}
        return {"kind": "cusp", "r": self._r}

    def __eq__(self, other):
        if not isinstance(other, SingularityDecl):
            return NotImplemented
        return self.a_dict() == other.a_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.a_dict().items())))

    def __str__(self):
        if self._kind == "ordinary":
            return f"punto ordinario de multiplicidad {self._multiplicity} (δ={self.delta})"
        return f"cúspide z^2 = x^{self._r} (δ={self.delta})"

    def __repr__(self):
        return f"SingularityDecl({self.a_dict()!r})"


@dataclass(frozen=True)
class CorrectionReport:
    p_a: int
    g: int
    dim_G: int
    toric_rank: int
    unipotent_dim: int
    sigma_X: int
    a_X_lower: int

    @property
    def ordinary(self):
        return self.sigma_X == self.g

    def a_dict(self):
        return {
            "p_a": self.p_a,
            "g": self.g,
            "dim_G": self.dim_G,
            "toric_rank": self.toric_rank,
            "unipotent_dim": self.unipotent_dim,
            "sigma_X": self.sigma_X,
            "a_X_lower": self.a_X_lower,
            "ordinary": self.ordinary,
        }


def correct_invariants(p_a, sigma_Xp, a_Xp, sings):
    """
    Pasa de los invariantes de J_{X'} a los de X.

    σ(G) es el rango tórico (cada rama extra aporta un G_m) y a(G) la
    dimensión unipotente, así que σ(X) = σ(X') - tórico y
    a(X) >= a(X') - unipotente.

    Raises:
        InputError: Σδ > p_a, σ(X') menor que el rango tórico o σ(X) > g
    """
    dim_G = sum(s.delta for s in sings)
    if dim_G > p_a:
        raise InputError(f"La suma de los δ ({dim_G}) excede el género aritmético ({p_a})")
    toric = sum(s.toric for s in sings)
    if sigma_Xp < toric:
        raise InputError(f"σ(X') = {sigma_Xp} es menor que el rango tórico declarado ({toric})")
    g = p_a - dim_G
    sigma_X = sigma_Xp - toric
    if sigma_X > g:
        raise InputError(f"σ(X) = {sigma_X} excede el género geométrico {g}: singularidades inconsistentes")
    reporte = CorrectionReport(
        p_a=p_a,
        g=g,
        dim_G=dim_G,
        toric_rank=toric,
        unipotent_dim=dim_G - toric,
        sigma_X=sigma_X,
        a_X_lower=max(0, a_Xp - (dim_G - toric)),
    )
    logger.debug("Corrección por singularidades: %s", reporte.a_dict())
    return reporte


def genus_plane(d, sings=()):
    """Género geométrico (d-1)(d-2)/2 - Σδ de una curva plana de grado d."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"El grado debe ser >= 1, se recibió {d!r}")
    g = (d - 1) * (d - 2) // 2 - sum(s.delta for s in sings)
    if g < 0:
        raise InputError(f"Las singularidades declaradas dan género negativo ({g})")
    return g
