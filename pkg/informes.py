"""
Módulo de cálculo y exportación de informes de invariantes.
Aquí se orquesta la tubería de `prank invariants`: según la presentación de la
curva elijo el constructor de Frobenius, calculo los invariantes semilineales,
corrijo por las singularidades declaradas y contrasto con la sección
[expected] del archivo. Los informes salen en JSON (CSV para barridos).
"""

import csv
import hashlib
import io
import json
import logging
import os
from dataclasses import dataclass, field

import click

from models import __version__
from models.algebra import elem_format, elem_parse
from models.cohomology import CohomologyBasis
from models.errores import InputError
from models.frobenius import column_images, frobenius_ci, frobenius_hirzebruch, frobenius_plane
from models.gjacobian import correct_invariants, genus_plane
from models.semilinear import invariants
from models.zeta_oracle import probe_singular

logger = logging.getLogger(__name__)

# Extensión máxima de la sonda de singularidades de `invariants --probe-singular`
MAX_EXT_SONDA = 4


@dataclass
class InvariantReport:
    """
    Informe de invariantes de una curva (o del grupo superior de una
    intersección completa de dimensión mayor).
    """

    presentation: str
    field: dict
    ambient: dict
    dimension: int
    p_a: int
    g: int
    sigma: int
    ordinary: bool
    frobenius: dict
    a_number: int = None
    a_lower: int = None
    sigma_singular: int = None
    a_singular: int = None
    correction: dict = None
    matrices: dict = None
    singular_points: list = None
    discrepancies: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def a_dict(self):
        return {clave: valor for clave, valor in self.__dict__.items() if valor is not None}

    def a_json(self):
        return json.dumps(self.a_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def huella(contenido):
    """sha256 del archivo de curva (bytes)."""
    return hashlib.sha256(contenido).hexdigest()


def mapa_de_frobenius(curve):
    polys = curve.polys()
    if curve.presentation == "plane":
        return frobenius_plane(polys[0])
    if curve.presentation == "complete_intersection":
        return frobenius_ci(polys)
    return frobenius_hirzebruch(curve.ambient.r, polys[0], betas=curve.ambient.betas)


def _imagenes_calculadas(M):
    """monomio -> {monomio: coeficiente} de cada columna, sólo para bases de cohomología."""
    if not isinstance(M.basis, CohomologyBasis):
        return None
    imagenes = {}
    for columna, terminos in zip(M.basis.monomials, column_images(M)):
        imagenes[tuple(columna)] = {tuple(m): c for m, c in terminos}
    return imagenes


def discrepancias(curve, informe, M):
    """Diferencias entre lo declarado en [expected] y lo calculado; nunca aborta."""
    esperado = curve.expected
    mensajes = []
    for clave in ("p_a", "g", "sigma", "a_number", "a_lower", "ordinary", "sigma_singular", "a_singular"):
        if clave not in esperado:
            continue
        calculado = getattr(informe, clave)
        if calculado != esperado[clave]:
            mensajes.append(f"{clave}: esperado {esperado[clave]}, calculado {calculado}")

    if esperado.get("image"):
        calculadas = _imagenes_calculadas(M)
        if calculadas is None:
            mensajes.append("image: la base es un núcleo, las imágenes por monomio no son comparables")
        else:
            for imagen in esperado["image"]:
                columna = tuple(imagen["column"])
                declarado = {}
                for termino in imagen["terms"]:
                    valor = elem_parse(curve.ctx, termino.get("coeff", "1"))
                    if valor != 0:
                        declarado[tuple(termino["exps"])] = elem_format(valor)
                obtenido = calculadas.get(columna)
                if obtenido is None:
                    mensajes.append(f"image {list(columna)}: el monomio no está en la base")
                elif obtenido != declarado:
                    mensajes.append(
                        f"image {list(columna)}: esperado {_texto_imagen(declarado)}, "
                        f"calculado {_texto_imagen(obtenido)}"
                    )
    for mensaje in mensajes:
        logger.warning("Discrepancia: %s", mensaje)
    return mensajes


def _texto_imagen(imagen):
    if not imagen:
        return "0"
    return " + ".join(f"{c}*{list(m)}" for m, c in sorted(imagen.items(), reverse=True))


def calcular_invariantes(curve, contenido=None, emit_matrices=False, probe=False):
    """
    Tubería completa de `prank invariants`.

    Args:
        curve (CurveSpec): curva validada
        contenido (bytes, optional): bytes del archivo, para la huella de procedencia
        emit_matrices (bool): incluir la matriz de Frobenius y su base
        probe (bool): buscar puntos singulares racionales (m <= 4)

    Returns:
        InvariantReport: informe determinista
    """
    M = mapa_de_frobenius(curve)
    paquete = invariants(M)
    singularidades = curve.singularities

    informe = InvariantReport(
        presentation=curve.presentation,
        field=curve.field,
        ambient=curve.a_dict()["ambient"],
        dimension=curve.dimension,
        p_a=paquete.dim,
        g=paquete.dim,
        sigma=paquete.sigma,
        ordinary=paquete.ordinary,
        frobenius=paquete.a_dict(),
    )
    if singularidades:
        correccion = correct_invariants(paquete.dim, paquete.sigma, paquete.a_number, singularidades)
        if curve.presentation == "plane":
            g_plano = genus_plane(curve.equations[0]["degree"], singularidades)
            if g_plano != correccion.g:
                raise InputError(f"Género inconsistente: {g_plano} frente a {correccion.g}")
        informe.g = correccion.g
        informe.sigma = correccion.sigma_X
        informe.ordinary = correccion.ordinary
        informe.a_lower = correccion.a_X_lower
        informe.sigma_singular = paquete.sigma
        informe.a_singular = paquete.a_number
        informe.correction = correccion.a_dict()
    else:
        informe.a_number = paquete.a_number
    if not curve.is_curve:
        # Para dimensión > 1 sólo hay grupo superior: no hay género
        informe.g = None

    if emit_matrices:
        etiquetas = M.basis.labels()
        informe.matrices = {"frobenius": M.rows(), "basis": etiquetas}

    if probe:
        puntos = probe_singular(curve, MAX_EXT_SONDA)
        informe.singular_points = puntos
        if puntos and not singularidades:
            informe.discrepancies.append(
                f"singularities: la sonda halló {len(puntos)} puntos singulares y no hay ninguno declarado"
            )

    informe.discrepancies.extend(discrepancias(curve, informe, M))
    informe.provenance = {
        "version": __version__,
        "curve_sha256": huella(contenido if contenido is not None else curve.a_toml().encode("utf-8")),
    }
    logger.info(
        "%s: p_a=%d, g=%s, σ=%d, %s",
        curve, informe.p_a, informe.g, informe.sigma,
        "ordinaria" if informe.ordinary else "no ordinaria",
    )
    return informe


class GeneradorInformes:
    """
    Exporta informes a JSON (invariantes, verificación, zeta) y CSV (barridos).
    Sin ruta, el texto se devuelve para que la CLI lo escriba en stdout.
    """

    def _preparar_directorio(self, ruta):
        directorio = os.path.dirname(ruta)
        if directorio and not os.path.exists(directorio):
            os.makedirs(directorio)

    def exportar_json(self, datos, ruta=None):
        """
        Args:
            datos (dict | InvariantReport): contenido del informe
            ruta (str, optional): archivo de salida

        Returns:
            str: el JSON generado
        """
        if isinstance(datos, InvariantReport):
            texto = datos.a_json()
        else:
            texto = json.dumps(datos, sort_keys=True, indent=2, ensure_ascii=False)
        if ruta:
            self._preparar_directorio(ruta)
            with open(ruta, "w", encoding="utf-8") as f:
                f.write(texto + "\n")
            logger.info("Informe exportado a: %s", ruta)
        return texto

    def exportar_csv(self, encabezado, filas, ruta=None):
        """Escribe el CSV de un barrido; devuelve el texto generado."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(encabezado)
        for fila in filas:
            writer.writerow(fila)
        texto = buffer.getvalue()
        if ruta:
            self._preparar_directorio(ruta)
            with open(ruta, "w", newline="", encoding="utf-8") as f:
                f.write(texto)
            logger.info("Barrido exportado a: %s (%d filas)", ruta, len(filas))
        return texto

    def mostrar_invariantes(self, informe):
        """Resumen legible por consola (stderr)."""
        ancho = 60
        click.echo("\n" + "=" * ancho, err=True)
        click.echo("INVARIANTES DE LA CURVA".center(ancho), err=True)
        click.echo("=" * ancho, err=True)
        filas = [
            ("Presentación", informe.presentation),
            ("Género aritmético", informe.p_a),
            ("Género geométrico", informe.g if informe.g is not None else "-"),
            ("p-rango σ", informe.sigma),
            ("Número a", informe.a_number if informe.a_number is not None else f">= {informe.a_lower}"),
            ("Ordinaria", "sí" if informe.ordinary else "no"),
        ]
        for etiqueta, valor in filas:
            click.echo(f"{etiqueta:<25} {valor}", err=True)
        if informe.discrepancies:
            click.echo("-" * ancho, err=True)
            for mensaje in informe.discrepancies:
                click.echo(f"[WARN] {mensaje}", err=True)
        click.echo("=" * ancho, err=True)
