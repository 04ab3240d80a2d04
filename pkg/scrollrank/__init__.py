from loguru import logger
from pathlib import Path
from rich.console import Console
from rich.logging import RichHandler
from importlib.metadata import PackageNotFoundError, version
from scrollrank import settings

try:
    from pyinspect import install_traceback

    install_traceback(hide_locals=not settings.DEBUG)
except ImportError:
    pass

from scrollrank.polyspace import MultiIndex, SymPoly
from scrollrank.catalecticant import ProfilePoint
from scrollrank.scroll import ScrollParams
from scrollrank.terracini import RankBackend, SecantProbe
from scrollrank.bounds import AHExceptionPolicy, BoundsReport
from scrollrank.decouple import DecoupledModel, RecoveryReport


try:
    __version__ = version("scrollrank")
except PackageNotFoundError:
    # package is not installed
    pass

base_dir = Path.home() / ".scrollrank"
try:
    base_dir.mkdir(parents=True, exist_ok=True)
except OSError:  # read-only home, e.g. on CI runners
    base_dir = None


# set logger level
def set_logging(level="INFO", path=None):
    """
    Sets loguru to save all logs to a file in
    scrollrank's base directory and to print
    to stderr only logs >= to a given level
    """
    logger.remove()

    if path is None and base_dir is not None:
        path = str(base_dir / "log.log")
    if path is not None:
        Path(path).unlink(missing_ok=True)
        logger.add(path, level="DEBUG")

    console_level = "DEBUG" if level == "DEBUG" else "WARNING"
    logger.add(
        RichHandler(
            level=console_level, markup=True, console=Console(stderr=True)
        ),
        level=console_level,
        format="{message}",
    )


if not settings.DEBUG:
    set_logging()
else:
    set_logging(level="DEBUG")
