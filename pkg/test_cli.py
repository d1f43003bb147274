"""
Pruebas de la interfaz de línea de comandos `prank` de punta a punta sobre
las curvas de ejemplo.
"""

import csv
import io
import json
import logging

import pytest
from click.testing import CliRunner

from main import prank


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture(autouse=True)
def sin_manejador_de_registro():
    yield
    raiz = logging.getLogger()
    raiz.handlers[:] = [h for h in raiz.handlers if h.get_name() != "prank"]


def _filas(texto):
    return list(csv.DictReader(io.StringIO(texto)))


# ==================== INVARIANTS ====================

def test_invariantes_de_la_quintica(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("quintica_cuspide.toml")])
    assert resultado.exit_code == 0, resultado.stderr
    informe = json.loads(resultado.stdout)
    assert informe["presentation"] == "plane"
    assert informe["p_a"] == 6
    assert informe["g"] == 4
    assert informe["sigma"] == 4
    assert informe["ordinary"] is True
    assert informe["sigma_singular"] == 4
    assert informe["a_singular"] == 2
    assert informe["a_lower"] == 0
    assert "a_number" not in informe
    assert informe["correction"]["toric_rank"] == 0
    assert informe["frobenius"]["sigma"] == 4
    assert len(informe["provenance"]["curve_sha256"]) == 64


def test_invariantes_de_la_eliptica(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("eliptica_f3.toml")])
    assert resultado.exit_code == 0, resultado.stderr
    informe = json.loads(resultado.stdout)
    assert informe["p_a"] == 1
    assert informe["frobenius"]["charpoly"] == ["1", "0"]
    assert informe["a_number"] == 1


def test_invariantes_de_la_conica(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("conica.toml")])
    assert resultado.exit_code == 0, resultado.stderr
    informe = json.loads(resultado.stdout)
    assert informe["g"] == 0
    assert informe["sigma"] == 0
    assert informe["ordinary"] is True


def test_informe_reproducible(runner, ruta_curva):
    argumentos = ["invariants", ruta_curva("interseccion_p3.toml"), "--emit-matrices"]
    primero = runner.invoke(prank, argumentos)
    segundo = runner.invoke(prank, argumentos)
    assert primero.exit_code == 0, primero.stderr
    assert primero.stdout_bytes == segundo.stdout_bytes


def test_discrepancias_con_los_valores_publicados(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("quintica_cuspide.toml")])
    discrepancias = json.loads(resultado.stdout)["discrepancies"]
    assert "sigma: esperado 1, calculado 4" in discrepancias
    assert "sigma_singular: esperado 1, calculado 4" in discrepancias
    # las columnas de (1,3,1) y (2,2,1) coinciden; las otras cuatro no
    imagenes = [d for d in discrepancias if d.startswith("image")]
    assert len(imagenes) == 4
    assert not any(d.startswith("image [1, 3, 1]") for d in imagenes)
    assert "[WARN]" in resultado.stderr


@pytest.mark.parametrize("archivo, sigma", [
    ("sextica_triples.toml", 4),
    ("interseccion_p3.toml", 4),
    ("hirzebruch_r0.toml", 4),
])
def test_tres_presentaciones_de_genero_cuatro(runner, ruta_curva, archivo, sigma):
    resultado = runner.invoke(prank, ["invariants", ruta_curva(archivo)])
    assert resultado.exit_code == 0, resultado.stderr
    informe = json.loads(resultado.stdout)
    assert informe["g"] == 4
    assert informe["sigma"] == sigma
    assert informe["ordinary"] is True
    assert informe["discrepancies"] == []


def test_emitir_matrices(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("interseccion_p3.toml"), "--emit-matrices"])
    matrices = json.loads(resultado.stdout)["matrices"]
    assert matrices["frobenius"][3][0] == "g"
    assert matrices["frobenius"][0][3] == "1"
    assert matrices["basis"][0] == {"2,1,1,1": "1"}


def test_salida_a_archivo(runner, ruta_curva, tmp_path):
    destino = tmp_path / "informes" / "eliptica.json"
    resultado = runner.invoke(prank, ["invariants", ruta_curva("eliptica_f3.toml"), "--json", str(destino)])
    assert resultado.exit_code == 0
    assert resultado.stdout == ""
    informe = json.loads(destino.read_text(encoding="utf-8"))
    assert informe["sigma"] == 0
    assert informe["a_number"] == 1


def test_sonda_y_resumen(runner, ruta_curva):
    resultado = runner.invoke(prank, ["invariants", ruta_curva("quintica_cuspide.toml"),
                                      "--probe-singular", "--mostrar"])
    assert resultado.exit_code == 0, resultado.stderr
    informe = json.loads(resultado.stdout)
    assert {"ext": 1, "point": [0, 1, 0]} in informe["singular_points"]
    assert "INVARIANTES DE LA CURVA" in resultado.stderr


def test_archivo_inexistente(runner, tmp_path):
    resultado = runner.invoke(prank, ["invariants", str(tmp_path / "nada.toml")])
    assert resultado.exit_code == 2
    assert "[ERROR]" in resultado.stderr


def test_toml_invalido(runner, tmp_path):
    archivo = tmp_path / "mala.toml"
    archivo.write_text("[field]\np = 4\n[ambient]\ntype = \"projective\"\n"
                       "[[equation]]\ndegree = 1\nterms = [{ exps = [1, 0, 0] }]\n", encoding="utf-8")
    resultado = runner.invoke(prank, ["invariants", str(archivo)])
    assert resultado.exit_code == 2
    assert "no es primo" in resultado.stderr


def test_nivel_de_registro_invalido(runner, ruta_curva):
    resultado = runner.invoke(prank, ["--log-level", "ruidoso", "invariants", ruta_curva("conica.toml")])
    assert resultado.exit_code == 2


def test_version(runner):
    resultado = runner.invoke(prank, ["--version"])
    assert resultado.exit_code == 0
    assert "1.0.0" in resultado.stdout


# ==================== VERIFY Y ZETA ====================

def test_verificacion_de_eliptica(runner, ruta_curva):
    resultado = runner.invoke(prank, ["verify", ruta_curva("eliptica_f3.toml")])
    assert resultado.exit_code == 0, resultado.stderr
    datos = json.loads(resultado.stdout)
    assert datos["passed"] is True
    assert datos["duality"]["status"] == "pass"
    assert datos["zeta"]["status"] == "pass"
    assert datos["zeta"]["sigma"] == 0


def test_verificacion_omite_lo_que_no_aplica(runner, ruta_curva):
    resultado = runner.invoke(prank, ["verify", ruta_curva("interseccion_p3.toml"), "--zeta-max-ext", "1"])
    assert resultado.exit_code == 0, resultado.stderr
    datos = json.loads(resultado.stdout)
    assert datos["duality"]["status"] == "skipped"
    assert datos["zeta"]["status"] == "skipped"
    assert datos["passed"] is True


def test_zeta_de_eliptica_ordinaria(runner, ruta_curva):
    resultado = runner.invoke(prank, ["zeta", ruta_curva("eliptica_ordinaria_f2.toml")])
    assert resultado.exit_code == 0, resultado.stderr
    datos = json.loads(resultado.stdout)
    assert datos["counts"] == [4]
    assert datos["numerator"] == [1, 1, 2]
    assert datos["sigma"] == 1


def test_zeta_de_curva_singular(runner, ruta_curva):
    resultado = runner.invoke(prank, ["zeta", ruta_curva("quintica_cuspide.toml")])
    assert resultado.exit_code == 2


def test_zeta_viola_la_cota_de_weil(runner, tmp_path):
    # xy(x + y) = 0: tres rectas por (0:0:1), N_1 = 7 excede la cota para g = 1
    archivo = tmp_path / "tres_rectas.toml"
    archivo.write_text("[field]\np = 2\n[ambient]\ntype = \"projective\"\nn = 2\n"
                       "[[equation]]\ndegree = 3\nterms = [{ exps = [2, 1, 0] }, { exps = [1, 2, 0] }]\n",
                       encoding="utf-8")
    resultado = runner.invoke(prank, ["zeta", str(archivo)])
    assert resultado.exit_code == 1
    assert "Weil" in resultado.stderr


def test_zeta_fuera_de_presupuesto(runner, ruta_curva, monkeypatch):
    monkeypatch.setenv("PRANK_ENUM_BITS", "1")
    resultado = runner.invoke(prank, ["zeta", ruta_curva("eliptica_f3.toml")])
    assert resultado.exit_code == 2
    assert "PRANK_ENUM_BITS" in resultado.stderr


# ==================== SWEEP ====================

def test_barrido_de_la_quintica(runner, ruta_curva):
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("quintica_plantilla.toml"),
        "--range", "A=nonzero", "--range", "B=nonzero", "--where", "A!=B",
    ])
    assert resultado.exit_code == 0, resultado.stderr
    filas = _filas(resultado.stdout)
    assert len(filas) == 30
    assert (filas[0]["A"], filas[0]["B"]) == ("1", "2")
    assert all(f["A"] != f["B"] for f in filas)
    assert {f["sigma"] for f in filas} == {"4"}
    assert {f["sigma_singular"] for f in filas} == {"4"}
    assert {f["a"] for f in filas} == {"0"}
    assert {f["error"] for f in filas} == {""}


def test_barrido_sin_filtro(runner, ruta_curva):
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("quintica_plantilla.toml"), "--range", "A=nonzero", "--range", "B=nonzero",
    ])
    assert len(_filas(resultado.stdout)) == 36


def test_barrido_sobre_f4(runner, ruta_curva, tmp_path):
    destino = tmp_path / "sextica.csv"
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("sextica_plantilla.toml"), "--range", "L=nonprime", "--csv", str(destino),
    ])
    assert resultado.exit_code == 0, resultado.stderr
    filas = _filas(destino.read_text(encoding="utf-8"))
    assert [f["L"] for f in filas] == ["g", "1 + g"]
    assert {f["sigma"] for f in filas} == {"4"}


def test_barrido_con_marcador_sin_rango(runner, ruta_curva):
    resultado = runner.invoke(prank, ["sweep", ruta_curva("quintica_plantilla.toml"), "--range", "A=1,2"])
    assert resultado.exit_code == 2
    assert "B" in resultado.stderr


def test_barrido_con_filtro_invalido(runner, ruta_curva):
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("quintica_plantilla.toml"),
        "--range", "A=1", "--range", "B=2", "--where", "A<B",
    ])
    assert resultado.exit_code == 2


def test_barrido_con_rango_vacio(runner, ruta_curva):
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("quintica_plantilla.toml"), "--range", "A=", "--range", "B=1",
    ])
    assert resultado.exit_code == 0, resultado.stderr
    assert resultado.stdout.splitlines() == ["A,B,p_a,g,sigma,a,ordinary,sigma_singular,error"]


def test_barrido_filtrado_por_completo(runner, ruta_curva):
    resultado = runner.invoke(prank, [
        "sweep", ruta_curva("quintica_plantilla.toml"),
        "--range", "A=1", "--range", "B=1", "--where", "A!=B",
    ])
    assert resultado.exit_code == 0, resultado.stderr
    assert _filas(resultado.stdout) == []
