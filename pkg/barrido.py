"""
Barridos de parámetros: instancia una plantilla de curva para cada
combinación de valores de sus marcadores y calcula σ, a y ordinariedad.
Las filas salen en el orden determinista del producto de rangos, aunque se
calculen en paralelo.
"""

import itertools
import logging
import re
from concurrent.futures import ThreadPoolExecutor

from config import obtener_ajustes
from informes import calcular_invariantes
from models.algebra import elem_format, elem_parse
from models.errores import InputError, PrankError

logger = logging.getLogger(__name__)

COLUMNAS = ["p_a", "g", "sigma", "a", "ordinary", "sigma_singular", "error"]

_PREDICADO = re.compile(r"^\s*(.+?)\s*(!=|==)\s*(.+?)\s*$")


def subconjunto(ctx, texto):
    """
    Elementos del cuerpo descritos por `texto`, en orden de su representación entera.

    `all`, `nonzero`, `nonprime` (fuera del cuerpo primo) o una lista
    explícita separada por comas (`1,2,g+1`).
    """
    texto = texto.strip()
    if texto == "all":
        return [ctx.GF(i) for i in range(ctx.q)]
    if texto == "nonzero":
        return [ctx.GF(i) for i in range(1, ctx.q)]
    if texto == "nonprime":
        return [ctx.GF(i) for i in range(ctx.p, ctx.q)]
    if not texto:
        return []
    return [elem_parse(ctx, parte) for parte in texto.split(",")]


def parsear_rangos(ctx, rangos):
    """`NOMBRE=subconjunto` -> {nombre: [elementos]} conservando el orden dado."""
    resultado = {}
    for rango in rangos:
        if "=" not in rango:
            raise InputError(f"Rango inválido '{rango}': use NOMBRE=subconjunto")
        nombre, texto = rango.split("=", 1)
        nombre = nombre.strip()
        if nombre in resultado:
            raise InputError(f"El marcador '{nombre}' tiene dos rangos")
        resultado[nombre] = subconjunto(ctx, texto)
    return resultado


def parsear_filtro(ctx, texto, nombres):
    """
    Predicados `A!=B` o `A==B` unidos por `,` o `and`.

    Returns:
        function: valores -> bool
    """
    if not texto:
        return lambda valores: True
    predicados = []
    for parte in re.split(r",|\band\b", texto):
        if not parte.strip():
            continue
        coincide = _PREDICADO.match(parte)
        if not coincide:
            raise InputError(f"Predicado inválido '{parte.strip()}'")
        izquierda, operador, derecha = coincide.groups()
        predicados.append((_operando(ctx, izquierda, nombres), operador, _operando(ctx, derecha, nombres)))

    def cumple(valores):
        for izquierda, operador, derecha in predicados:
            a, b = izquierda(valores), derecha(valores)
            if (a == b) != (operador == "=="):
                return False
        return True

    return cumple


def _operando(ctx, texto, nombres):
    if texto in nombres:
        return lambda valores: valores[texto]
    try:
        constante = elem_parse(ctx, texto)
    except InputError:
        raise InputError(f"'{texto}' no es un marcador con rango ni un coeficiente") from None
    return lambda valores: constante


def _fila(plantilla, nombres, combinacion):
    valores = dict(zip(nombres, combinacion))
    parametros = [elem_format(v) for v in combinacion]
    try:
        informe = calcular_invariantes(plantilla.instanciar(valores))
    except PrankError as e:
        logger.warning("Fila %s: %s", parametros, e)
        return parametros + ["", "", "", "", "", "", str(e)]
    a = informe.a_number if informe.a_number is not None else informe.a_lower
    singular = "" if informe.sigma_singular is None else informe.sigma_singular
    return parametros + [informe.p_a, informe.g, informe.sigma, a, informe.ordinary, singular, ""]


def cmd_sweep(plantilla, rangos, where=None, hilos=None):
    """
    Args:
        plantilla (CurveSpec): curva con marcadores
        rangos (list[str]): `NOMBRE=subconjunto` por marcador
        where (str, optional): filtro de combinaciones
        hilos (int, optional): tope de concurrencia (PRANK_THREADS por defecto)

    Returns:
        tuple: (encabezado, filas)
    """
    valores = parsear_rangos(plantilla.ctx, rangos)
    marcadores = plantilla.placeholders
    sin_rango = [m for m in marcadores if m not in valores]
    if sin_rango:
        raise InputError(f"Marcadores sin rango: {', '.join(sin_rango)}")
    sobrantes = [n for n in valores if n not in marcadores]
    if sobrantes:
        raise InputError(f"Rangos para marcadores inexistentes: {', '.join(sobrantes)}")

    nombres = list(valores)
    filtro = parsear_filtro(plantilla.ctx, where, nombres)
    combinaciones = [
        c for c in itertools.product(*(valores[n] for n in nombres))
        if filtro(dict(zip(nombres, c)))
    ]
    logger.info("Barrido de %d combinaciones", len(combinaciones))
    hilos = hilos or obtener_ajustes().hilos
    with ThreadPoolExecutor(max_workers=hilos) as pool:
        filas = list(pool.map(lambda c: _fila(plantilla, nombres, c), combinaciones))
    return nombres + COLUMNAS, filas
