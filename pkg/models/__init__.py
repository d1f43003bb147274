# Este archivo permite que 'models' sea un paquete de Python.
# Los submódulos se importan por su nombre (models.algebra, models.frobenius, ...)
from .errores import BudgetError, ComputationError, InputError, PrankError

__version__ = "1.0.0"

__all__ = ['PrankError', 'InputError', 'BudgetError', 'ComputationError', '__version__']
