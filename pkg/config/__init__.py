# Este archivo permite que 'config' sea un paquete de Python
from .entorno import Ajustes, obtener_ajustes, configurar_registro

__all__ = ['Ajustes', 'obtener_ajustes', 'configurar_registro']
