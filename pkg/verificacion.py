"""
VERIFICACIÓN CRUZADA - prank
Contrasta el p-rango calculado por Frobenius con dos caminos independientes:
la dualidad con el operador de Cartier (curvas planas) y el oráculo de
conteo de puntos (curvas lisas dentro del presupuesto de enumeración).
"""

import logging

from informes import mapa_de_frobenius
from models.cartier import duality_check
from models.errores import InputError
from models.semilinear import invariants
from models.zeta_oracle import zeta_data

logger = logging.getLogger(__name__)


def _marca(ok):
    return "✅" if ok else "❌"


def verificar_dualidad(curve):
    """Dualidad Frobenius/Cartier; sólo para curvas planas."""
    if curve.presentation != "plane":
        logger.info("Dualidad omitida: sólo aplica a curvas planas")
        return {"status": "skipped", "reason": "sólo aplica a curvas planas"}
    reporte = duality_check(curve.polys()[0])
    logger.info("%s Dualidad: σ(F)=%d σ(C)=%d, a(F)=%d a(C)=%d",
                _marca(reporte.passed), reporte.frobenius_sigma, reporte.cartier_sigma,
                reporte.frobenius_a, reporte.cartier_a)
    datos = reporte.a_dict()
    datos["status"] = "pass" if reporte.passed else "fail"
    return datos


def verificar_zeta(curve, sigma_frobenius, max_ext=None):
    """Oráculo zeta; se omite (con aviso) para curvas singulares o fuera de presupuesto."""
    if curve.singularities:
        logger.warning("Zeta omitido: la curva tiene singularidades declaradas")
        return {"status": "skipped", "reason": "curva con singularidades declaradas"}
    if not curve.is_curve:
        return {"status": "skipped", "reason": "no es una curva"}
    g = curve.arithmetic_genus()
    if max_ext is not None and g > max_ext:
        logger.warning("Zeta omitido: g=%d excede --zeta-max-ext=%d", g, max_ext)
        return {"status": "skipped", "reason": f"g={g} excede zeta-max-ext={max_ext}"}
    try:
        datos = zeta_data(curve)
    except InputError as e:
        logger.warning("Zeta omitido: %s", e)
        return {"status": "skipped", "reason": str(e)}
    coincide = datos.sigma == sigma_frobenius
    logger.info("%s Zeta: σ(zeta)=%d, σ(Frobenius)=%d", _marca(coincide), datos.sigma, sigma_frobenius)
    resultado = datos.a_dict()
    resultado["sigma_frobenius"] = sigma_frobenius
    resultado["status"] = "pass" if coincide else "fail"
    return resultado


def cmd_verify(curve, zeta_max_ext=None):
    """
    Ejecuta todas las verificaciones.

    Returns:
        dict: {"duality", "zeta", "passed"}; passed es falso si alguna falló
    """
    # El σ a contrastar es el de J_{X'}: el oráculo sólo corre sobre curvas lisas
    sigma = invariants(mapa_de_frobenius(curve)).sigma
    resultado = {
        "duality": verificar_dualidad(curve),
        "zeta": verificar_zeta(curve, sigma, zeta_max_ext),
    }
    resultado["passed"] = all(r["status"] != "fail" for r in resultado.values())
    if resultado["passed"]:
        logger.info("✅ Verificación completada")
    else:
        logger.error("❌ La verificación cruzada falló")
    return resultado
