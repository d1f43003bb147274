import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from models.errores import InputError

# Cargar variables de entorno desde .env
# Los ajustes de ejecución (hilos, nivel de registro, presupuesto de
# enumeración) se leen del entorno; nada se fija en el código.
load_dotenv()

NIVELES = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Ajustes:
    """Ajustes de ejecución leídos del entorno."""

    hilos: int
    nivel_registro: str
    bits_enumeracion: float


def _entero_positivo(nombre, valor):
    try:
        numero = int(valor)
    except ValueError:
        raise InputError(f"{nombre} debe ser un entero, se recibió '{valor}'")
    if numero < 1:
        raise InputError(f"{nombre} debe ser positivo, se recibió {numero}")
    return numero


def obtener_ajustes():
    """
    Construye los ajustes a partir de las variables de entorno.

    Variables:
        PRANK_THREADS: tope de concurrencia (por defecto, los núcleos disponibles)
        PRANK_LOG_LEVEL: nivel de registro (por defecto INFO)
        PRANK_ENUM_BITS: cota de dim·ext·k·log2(p) para el oráculo zeta (por defecto 24)

    Returns:
        Ajustes: configuración validada
    """
    hilos_env = os.getenv("PRANK_THREADS")
    hilos = _entero_positivo("PRANK_THREADS", hilos_env) if hilos_env else (os.cpu_count() or 1)

    nivel = os.getenv("PRANK_LOG_LEVEL", "INFO").strip().upper()
    if nivel not in NIVELES:
        raise InputError(f"PRANK_LOG_LEVEL inválido: '{nivel}'")

    bits_env = os.getenv("PRANK_ENUM_BITS", "24")
    try:
        bits = float(bits_env)
    except ValueError:
        raise InputError(f"PRANK_ENUM_BITS debe ser numérico, se recibió '{bits_env}'")
    if bits <= 0:
        raise InputError("PRANK_ENUM_BITS debe ser positivo")

    return Ajustes(hilos=hilos, nivel_registro=nivel, bits_enumeracion=bits)


def configurar_registro(nivel="INFO"):
    """
    Configura el registro raíz con las etiquetas [OK], [WARN] y [ERROR].
    Los mensajes van a stderr; stdout queda libre para JSON y CSV.
    """
    nivel = str(nivel).strip().upper()
    if nivel not in NIVELES:
        raise InputError(f"Nivel de registro inválido: '{nivel}'")
    logging.addLevelName(logging.INFO, "OK")
    logging.addLevelName(logging.WARNING, "WARN")
    manejador = logging.StreamHandler()
    manejador.set_name("prank")
    manejador.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
    raiz = logging.getLogger()
    # Reemplaza sólo el manejador propio de una configuración anterior
    raiz.handlers[:] = [h for h in raiz.handlers if h.get_name() != "prank"] + [manejador]
    raiz.setLevel(nivel)
