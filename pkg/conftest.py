"""
Fixtures compartidas por las pruebas: cuerpos chicos, rutas a las curvas de
ejemplo y una semilla fija para las pruebas aleatorias.
"""

import os
import random

import pytest

from models.algebra import field_make
from models.curva import CurveSpec

DIRECTORIO_CURVAS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "curvas")


@pytest.fixture
def f2():
    return field_make(2)


@pytest.fixture
def f3():
    return field_make(3)


@pytest.fixture
def f4():
    return field_make(2, 2)


@pytest.fixture
def f7():
    return field_make(7)


@pytest.fixture
def f9():
    return field_make(3, 2)


@pytest.fixture
def azar():
    return random.Random(20240917)


@pytest.fixture
def ruta_curva():
    def _ruta(nombre):
        return os.path.join(DIRECTORIO_CURVAS, nombre)
    return _ruta


@pytest.fixture
def curva(ruta_curva):
    def _cargar(nombre):
        return CurveSpec.cargar(ruta_curva(nombre))
    return _cargar


@pytest.fixture(autouse=True)
def presupuesto_por_defecto(monkeypatch):
    """Aísla las pruebas de un .env local."""
    monkeypatch.setenv("PRANK_ENUM_BITS", "24")
    monkeypatch.setenv("PRANK_THREADS", "2")
    monkeypatch.setenv("PRANK_LOG_LEVEL", "INFO")
