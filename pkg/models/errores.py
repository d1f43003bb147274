"""
Jerarquía de excepciones del proyecto.

La CLI traduce InputError a código de salida 2 y ComputationError a 1.
InputError hereda de ValueError para que los setters de validación sigan
lanzando un ValueError como siempre.
"""


class PrankError(Exception):
    """Raíz de todos los errores propios."""


class InputError(PrankError, ValueError):
    """Entrada inválida: archivo de curva, parámetros o datos declarados."""


class BudgetError(InputError):
    """El cálculo pedido excede el presupuesto de enumeración configurado."""


class ComputationError(PrankError, RuntimeError):
    """Fallo de cálculo o aserción interna violada."""
