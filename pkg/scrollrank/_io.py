import json
from pathlib import Path

from loguru import logger


def check_file_exists(func):
    """
    Decorator that throws an error if a function's first argument
    is not a path to an existing file.
    """

    def inner(*args, **kwargs):
        if not Path(args[0]).exists():
            raise FileNotFoundError(f"File {args[0]} not found")
        return func(*args, **kwargs)

    inner.__name__ = func.__name__
    inner.__doc__ = func.__doc__
    return inner


@check_file_exists
def load_json(filepath):
    """
    Load a JSON document from file

    :param filepath: str, Path. Path to a .json file
    """
    logger.debug(f"Loading JSON from: {filepath}")
    with open(filepath, "r") as fin:
        return json.load(fin)


def save_json(data, filepath):
    """
    Save a JSON-serializable object to file

    :param data: dict or list
    :param filepath: str, Path
    """
    filepath = Path(filepath)
    logger.debug(f"Saving JSON to: {filepath}")
    filepath.write_text(dumps(data) + "\n")
    return filepath


def dumps(data):
    """
    Stable JSON rendering used for all machine output
    """
    return json.dumps(data, indent=2, sort_keys=False)
