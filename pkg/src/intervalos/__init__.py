"""Consultas booleanas con joins de intersección sobre bases de intervalos.
Expone la reducción a joins de igualdad, el análisis de aciclicidad/anchos
y los motores de evaluación (oráculo, Yannakakis, leapfrog, descomposición)."""

from importlib.metadata import PackageNotFoundError, version as _pkg_version

try:
    __version__ = _pkg_version("intervalos")
except PackageNotFoundError:  # ejecución desde el árbol sin instalar (run.py)
    __version__ = "0.0.0+local"
