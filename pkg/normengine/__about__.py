import re
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path


def project_version(toml_header="[tool.poetry]"):
    """The installed version of this package, else the one in pyproject.toml.

    Raises:
        KeyError: if neither source yields a version.
    """
    package = __name__.split(".")[0]
    try:
        return version(package)
    except PackageNotFoundError:
        pass
    pyproject = Path(__file__).parents[1] / "pyproject.toml"
    try:
        toml_text = pyproject.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise KeyError(f"{package} is not installed and {pyproject} is missing.") from e
    header = re.escape(toml_header)
    match = re.search(rf'^{header}$[^^\[]*^version = "([^"]+)"$', toml_text, re.MULTILINE)
    if not match:
        raise KeyError("No version specification was found in pyproject.toml.")
    return match.group(1)


__version__ = project_version()
