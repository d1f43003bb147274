"""
CurveSpec: descripción declarativa de una curva (cuerpo, ambiente, ecuaciones,
singularidades declaradas, etiquetas y valores esperados) leída desde TOML.
"""

import logging
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np
import tomli_w

from models.algebra import MultiPoly, elem_format, elem_parse, field_make
from models.cohomology import Ambient, basis_projective, kernel_intersection
from models.errores import InputError
from models.gjacobian import SingularityDecl

logger = logging.getLogger(__name__)

# Un coeficiente que es sólo un nombre (con signo opcional) es un marcador de plantilla
_MARCADOR = re.compile(r"^\s*(-)?\s*([^\W\d]\w*)\s*$")

CLAVES = {"field", "ambient", "equation", "singularity", "labels", "expected"}
CLAVES_ESPERADAS = {
    "sigma", "a_number", "a_lower", "g", "p_a", "ordinary",
    "sigma_singular", "a_singular", "image",
}


def _marcador(coeff):
    """(nombre, negativo) si el coeficiente es un marcador; None si es un valor."""
    coincide = _MARCADOR.match(coeff)
    if not coincide or coincide.group(2) == "g":
        return None
    return coincide.group(2), coincide.group(1) == "-"


def _entero(valor, nombre):
    if isinstance(valor, bool) or not isinstance(valor, int):
        raise InputError(f"'{nombre}' debe ser un entero, se recibió {valor!r}")
    return valor


class CurveSpec:
    """
    Curva declarada en un archivo TOML.

    Presentaciones: "plane" (P^2, una ecuación), "complete_intersection"
    (P^n con n >= 3, de 1 a n-1 ecuaciones) y "hirzebruch" (una ecuación).
    """

    def __init__(self, field, ambient, equations, singularities=(), labels=None, expected=None):
        """
        Args:
            field (dict): {"p", "k", "modulus" opcional}
            ambient (dict): {"type": "projective", "n"} o {"type": "hirzebruch", "r", "beta_vectors" opcional}
            equations (list): [{"degree", "terms": [{"exps", "coeff"}]}]
            singularities (list, optional): SingularityDecl o diccionarios
            labels (dict, optional): metadatos libres
            expected (dict, optional): valores declarados a contrastar
        """
        self._field = self._normalizar_cuerpo(field)
        self._ctx = field_make(self._field["p"], self._field["k"], self._field.get("modulus"))
        self._ambient_dict, self._ambient = self._normalizar_ambiente(ambient)
        self._equations = [self._normalizar_ecuacion(e, i) for i, e in enumerate(equations or [])]
        self._validar_numero_de_ecuaciones()
        self._singularities = [
            s if isinstance(s, SingularityDecl) else SingularityDecl.crear_desde_dict(s)
            for s in singularities or []
        ]
        if self._singularities and not self.is_curve:
            raise InputError("Sólo se pueden declarar singularidades en curvas")
        self._labels = dict(labels or {})
        self._expected = self._validar_esperados(expected or {})

    # ==================== NORMALIZACIÓN ====================

    @staticmethod
    def _normalizar_cuerpo(datos):
        if not isinstance(datos, dict) or "p" not in datos:
            raise InputError("La sección [field] debe declarar p")
        sobrantes = set(datos) - {"p", "k", "modulus"}
        if sobrantes:
            raise InputError(f"Claves desconocidas en [field]: {', '.join(sorted(sobrantes))}")
        cuerpo = {"p": _entero(datos["p"], "p")}
        if "modulus" in datos:
            modulo = [_entero(c, "modulus") for c in datos["modulus"]]
            cuerpo["k"] = _entero(datos.get("k", len(modulo) - 1), "k")
            cuerpo["modulus"] = modulo
        else:
            cuerpo["k"] = _entero(datos.get("k", 1), "k")
        return cuerpo

    @staticmethod
    def _normalizar_ambiente(datos):
        if not isinstance(datos, dict) or "type" not in datos:
            raise InputError("La sección [ambient] debe declarar type")
        tipo = datos["type"]
        if tipo == "projective":
            sobrantes = set(datos) - {"type", "n"}
            if sobrantes:
                raise InputError(f"Claves desconocidas en [ambient]: {', '.join(sorted(sobrantes))}")
            n = _entero(datos.get("n", 2), "n")
            return {"type": "projective", "n": n}, Ambient.projective(n)
        if tipo == "hirzebruch":
            sobrantes = set(datos) - {"type", "r", "beta_vectors"}
            if sobrantes:
                raise InputError(f"Claves desconocidas en [ambient]: {', '.join(sorted(sobrantes))}")
            r = _entero(datos.get("r", 0), "r")
            ambiente = Ambient.hirzebruch(r, datos.get("beta_vectors"))
            normal = {"type": "hirzebruch", "r": r}
            if not ambiente.default_betas:
                normal["beta_vectors"] = [list(b) for b in ambiente.betas]
            return normal, ambiente
        raise InputError(f"Tipo de ambiente desconocido '{tipo}': use projective o hirzebruch")

    def _normalizar_ecuacion(self, datos, i):
        if not isinstance(datos, dict) or "terms" not in datos or "degree" not in datos:
            raise InputError(f"La ecuación {i + 1} debe declarar degree y terms")
        pesos = self._ambient.weights
        if self._ambient.kind == "projective":
            grado = _entero(datos["degree"], "degree")
            esperado = np.array([grado])
        else:
            grado = [_entero(g, "degree") for g in datos["degree"]]
            if len(grado) != 2:
                raise InputError(f"La ecuación {i + 1} necesita un bigrado [a, b]")
            esperado = np.array(grado)
        terminos = []
        for termino in datos["terms"]:
            exps = [_entero(e, "exps") for e in termino.get("exps", [])]
            if len(exps) != self._ambient.nvars or min(exps) < 0:
                raise InputError(
                    f"Ecuación {i + 1}: el término {exps} debe tener {self._ambient.nvars} exponentes >= 0"
                )
            if not np.array_equal(np.array(exps) @ pesos, esperado):
                raise InputError(f"Ecuación {i + 1}: el término {exps} no tiene grado {grado}")
            coeff = termino.get("coeff", "1")
            coeff = str(coeff) if isinstance(coeff, int) and not isinstance(coeff, bool) else coeff
            if not isinstance(coeff, str):
                raise InputError(f"Ecuación {i + 1}: coeficiente inválido {coeff!r}")
            if _marcador(coeff) is None:
                elem_parse(self._ctx, coeff)
            terminos.append({"exps": exps, "coeff": coeff.strip()})
        return {"degree": grado, "terms": terminos}

    def _validar_numero_de_ecuaciones(self):
        cantidad = len(self._equations)
        if cantidad == 0:
            raise InputError("Se necesita al menos una ecuación")
        if self._ambient.kind == "hirzebruch" or self._ambient.n == 2:
            if cantidad != 1:
                raise InputError(f"Una curva en {self._ambient} se da con una sola ecuación, hay {cantidad}")
        elif cantidad > self._ambient.n - 1:
            raise InputError(f"En P^{self._ambient.n} caben a lo más {self._ambient.n - 1} ecuaciones")

    @staticmethod
    def _validar_esperados(datos):
        sobrantes = set(datos) - CLAVES_ESPERADAS
        if sobrantes:
            raise InputError(f"Claves desconocidas en [expected]: {', '.join(sorted(sobrantes))}")
        for imagen in datos.get("image", []):
            if "column" not in imagen or "terms" not in imagen:
                raise InputError("Cada [[expected.image]] necesita column y terms")
        return dict(datos)

    # ==================== PROPIEDADES ====================

    @property
    def ctx(self):
        return self._ctx

    @property
    def field(self):
        return dict(self._field)

    @property
    def ambient(self):
        return self._ambient

    @property
    def equations(self):
        return self._equations

    @property
    def singularities(self):
        return list(self._singularities)

    @property
    def labels(self):
        return dict(self._labels)

    @property
    def expected(self):
        return dict(self._expected)

    @property
    def presentation(self):
        if self._ambient.kind == "hirzebruch":
            return "hirzebruch"
        return "plane" if self._ambient.n == 2 else "complete_intersection"

    @property
    def dimension(self):
        """Dimensión de la variedad: 1 para curvas."""
        if self._ambient.kind == "hirzebruch":
            return 1
        return self._ambient.n - len(self._equations)

    @property
    def is_curve(self):
        return self.dimension == 1

    @property
    def placeholders(self):
        """Nombres de marcadores en orden de aparición."""
        nombres = []
        for ecuacion in self._equations:
            for termino in ecuacion["terms"]:
                marcador = _marcador(termino["coeff"])
                if marcador and marcador[0] not in nombres:
                    nombres.append(marcador[0])
        return nombres

    # ==================== POLINOMIOS ====================

    def polys(self):
        """Ecuaciones como MultiPoly con la graduación del ambiente."""
        pendientes = self.placeholders
        if pendientes:
            raise InputError(f"Marcadores sin valor: {', '.join(pendientes)}")
        resultado = []
        for ecuacion in self._equations:
            terminos = [(t["exps"], t["coeff"]) for t in ecuacion["terms"]]
            resultado.append(MultiPoly.from_terms(
                self._ctx, self._ambient.nvars, terminos, self._ambient.weights))
        return resultado

    def instanciar(self, valores):
        """
        Copia con los marcadores sustituidos.

        Args:
            valores (dict): nombre -> elemento del cuerpo o texto de coeficiente
        """
        ecuaciones = []
        for ecuacion in self._equations:
            terminos = []
            for termino in ecuacion["terms"]:
                coeff = termino["coeff"]
                marcador = _marcador(coeff)
                if marcador and marcador[0] in valores:
                    valor = valores[marcador[0]]
                    if isinstance(valor, str):
                        valor = elem_parse(self._ctx, valor)
                    coeff = elem_format(-valor if marcador[1] else valor)
                terminos.append({"exps": termino["exps"], "coeff": coeff})
            ecuaciones.append({"degree": ecuacion["degree"], "terms": terminos})
        etiquetas = dict(self._labels)
        etiquetas.update({nombre: elem_format(v) if not isinstance(v, str) else v
                          for nombre, v in valores.items()})
        return CurveSpec(self._field, self._ambient_dict, ecuaciones,
                         self._singularities, etiquetas, self._expected)

    def arithmetic_genus(self):
        """Dimensión del grupo superior de cohomología de O (el género aritmético si es curva)."""
        if self.presentation == "hirzebruch":
            a, b = self._equations[0]["degree"]
            return len(self._ambient.basis((a, b), self._ctx))
        if self.presentation == "plane":
            d = self._equations[0]["degree"]
            return (d - 1) * (d - 2) // 2
        fuente = basis_projective(self._ambient.n, sum(e["degree"] for e in self._equations), self._ctx)
        return len(kernel_intersection(fuente, self.polys()))

    # ==================== SERIALIZACIÓN ====================

    @classmethod
    def crear_desde_dict(cls, datos):
        """Crea la curva desde el diccionario de un archivo TOML."""
        if not isinstance(datos, dict):
            raise InputError("El archivo de curva debe ser una tabla TOML")
        sobrantes = set(datos) - CLAVES
        if sobrantes:
            raise InputError(f"Secciones desconocidas: {', '.join(sorted(sobrantes))}")
        for seccion in ("field", "ambient", "equation"):
            if seccion not in datos:
                raise InputError(f"Falta la sección [{seccion}]")
        return cls(
            field=datos["field"],
            ambient=datos["ambient"],
            equations=datos["equation"],
            singularities=datos.get("singularity", []),
            labels=datos.get("labels"),
            expected=datos.get("expected"),
        )

    @classmethod
    def desde_toml(cls, texto):
        try:
            datos = tomllib.loads(texto)
        except tomllib.TOMLDecodeError as e:
            raise InputError(f"TOML mal formado: {e}") from e
        return cls.crear_desde_dict(datos)

    @classmethod
    def cargar(cls, ruta):
        try:
            with open(ruta, "rb") as archivo:
                contenido = archivo.read()
        except OSError as e:
            raise InputError(f"No se pudo leer '{ruta}': {e}") from e
        logger.debug("Curva leída de %s", ruta)
        return cls.desde_toml(contenido.decode("utf-8"))

    def a_dict(self):
        datos = {
            "field": dict(self._field),
            "ambient": dict(self._ambient_dict),
            "equation": [
                {"degree": e["degree"], "terms": [dict(t) for t in e["terms"]]}
                for e in self._equations
            ],
        }
        if self._singularities:
            datos["singularity"] = [s.a_dict() for s in self._singularities]
        if self._labels:
            datos["labels"] = dict(self._labels)
        if self._expected:
            datos["expected"] = dict(self._expected)
        return datos

    def a_toml(self):
        return tomli_w.dumps(self.a_dict())

    def __eq__(self, other):
        if not isinstance(other, CurveSpec):
            return NotImplemented
        return self.a_dict() == other.a_dict()

    __hash__ = None

    def __str__(self):
        nombre = self._labels.get("name", self.presentation)
        return f"{nombre} sobre {self._ctx} en {self._ambient}"

    def __repr__(self):
        return f"CurveSpec({self.a_dict()!r})"
