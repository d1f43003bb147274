"""
prank - p-rango, número a y ordinariedad de curvas en característica p.

Este es el archivo principal: la interfaz de línea de comandos. Cada
subcomando lee un archivo de curva TOML, corre la tubería correspondiente y
escribe JSON (o CSV en los barridos) por stdout o en el archivo indicado.

Códigos de salida: 0 éxito, 1 fallo de cálculo o de verificación,
2 entrada inválida.
"""

import functools
import sys

import click

from barrido import cmd_sweep
from config import configurar_registro, obtener_ajustes
from informes import GeneradorInformes, calcular_invariantes
from models import __version__
from models.curva import CurveSpec
from models.errores import ComputationError, InputError
from models.zeta_oracle import zeta_data
from verificacion import cmd_verify


def manejar_errores(comando):
    """Traduce InputError a salida 2 y ComputationError a salida 1."""

    @functools.wraps(comando)
    def envoltura(*args, **kwargs):
        try:
            return comando(*args, **kwargs)
        except InputError as e:
            click.echo(f"[ERROR] Error de validación: {e}", err=True)
            sys.exit(2)
        except ComputationError as e:
            click.echo(f"[ERROR] Error de cálculo: {e}", err=True)
            sys.exit(1)

    return envoltura


def leer_curva(ruta):
    """Lee el archivo y devuelve (CurveSpec, bytes del archivo)."""
    try:
        with open(ruta, "rb") as f:
            contenido = f.read()
    except OSError as e:
        raise InputError(f"No se pudo leer '{ruta}': {e}") from e
    try:
        texto = contenido.decode("utf-8")
    except UnicodeDecodeError as e:
        raise InputError(f"'{ruta}' no está en UTF-8") from e
    return CurveSpec.desde_toml(texto), contenido


@click.group()
@click.version_option(__version__, prog_name="prank")
@click.option("--log-level", default=None, help="Nivel de registro (por defecto PRANK_LOG_LEVEL o INFO).")
def prank(log_level):
    """p-rango, número a y ordinariedad de curvas en característica p."""
    try:
        nivel = log_level or obtener_ajustes().nivel_registro
        configurar_registro(nivel)
    except InputError as e:
        click.echo(f"[ERROR] Error de validación: {e}", err=True)
        sys.exit(2)


@prank.command()
@click.argument("archivo", type=click.Path(dir_okay=False))
@click.option("--json", "salida", type=click.Path(dir_okay=False), help="Archivo JSON de salida.")
@click.option("--emit-matrices", is_flag=True, help="Incluir la matriz de Frobenius y su base.")
@click.option("--probe-singular", is_flag=True, help="Buscar puntos singulares racionales (m <= 4).")
@click.option("--mostrar", is_flag=True, help="Resumen legible por stderr.")
@manejar_errores
def invariants(archivo, salida, emit_matrices, probe_singular, mostrar):
    """Calcula p_a, g, σ, número a y ordinariedad."""
    curva, contenido = leer_curva(archivo)
    informe = calcular_invariantes(curva, contenido, emit_matrices=emit_matrices, probe=probe_singular)
    generador = GeneradorInformes()
    texto = generador.exportar_json(informe, salida)
    if mostrar:
        generador.mostrar_invariantes(informe)
    if not salida:
        click.echo(texto)


@prank.command()
@click.argument("archivo", type=click.Path(dir_okay=False))
@click.option("--zeta-max-ext", type=click.IntRange(min=0), default=None,
              help="Omitir el oráculo zeta si el género excede este valor.")
@manejar_errores
def verify(archivo, zeta_max_ext):
    """Dualidad Frobenius/Cartier y contraste con el oráculo zeta."""
    curva, _ = leer_curva(archivo)
    resultado = cmd_verify(curva, zeta_max_ext)
    click.echo(GeneradorInformes().exportar_json(resultado))
    if not resultado["passed"]:
        sys.exit(1)


@prank.command()
@click.argument("archivo", type=click.Path(dir_okay=False))
@click.option("--max-ext", type=click.IntRange(min=0), default=None,
              help="Mayor extensión permitida; debe cubrir el género.")
@manejar_errores
def zeta(archivo, max_ext):
    """Conteos N_1..N_g, numerador P(t) y p-rango de una curva lisa."""
    curva, _ = leer_curva(archivo)
    datos = zeta_data(curva, max_ext)
    click.echo(GeneradorInformes().exportar_json(datos.a_dict()))


@prank.command()
@click.argument("plantilla", type=click.Path(dir_okay=False))
@click.option("--range", "rangos", multiple=True, metavar="NOMBRE=SUBCONJUNTO",
              help="all, nonzero, nonprime o lista como 1,2,g+1.")
@click.option("--where", default=None, help='Filtro, p. ej. "A!=B".')
@click.option("--csv", "salida", type=click.Path(dir_okay=False), help="Archivo CSV de salida.")
@manejar_errores
def sweep(plantilla, rangos, where, salida):
    """Barrido de parámetros sobre los marcadores de una plantilla."""
    curva, _ = leer_curva(plantilla)
    encabezado, filas = cmd_sweep(curva, list(rangos), where)
    texto = GeneradorInformes().exportar_csv(encabezado, filas, salida)
    if not salida:
        click.echo(texto, nl=False)


def main():
    prank()


if __name__ == "__main__":
    main()
