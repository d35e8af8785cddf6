"""Report rendering: sorted-key JSON or a YAML text report."""

import json
from decimal import Decimal
from fractions import Fraction
from io import StringIO
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional

import click
import ruamel.yaml
from loguru import logger

ReportFormat = Literal["json", "text"]

_PLACES = Decimal("0.000001")


def rational(x: Fraction) -> Dict[str, str]:
    """Exact ``p/q`` with a six-place decimal alongside."""
    value = Decimal(x.numerator) / Decimal(x.denominator)
    return {"exact": str(x), "decimal": str(value.quantize(_PLACES))}


def labelled_sizes(
    sizes: Iterable[Fraction], labels: List[str]
) -> List[Dict[str, Any]]:
    """Per-vertex sizes as ``{vertex, size}`` records in vertex order."""
    return [
        {"vertex": label, "size": rational(size)} for label, size in zip(labels, sizes)
    ]


def _sorted(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: _sorted(value[key]) for key in sorted(value)}
    if isinstance(value, (list, tuple)):
        return [_sorted(item) for item in value]
    return value


class ReportWriter:
    """Writes a report dict to stdout or a file, byte-identically per input."""

    def __init__(self, fmt: ReportFormat = "json", output: Optional[str] = None):
        self.fmt = fmt
        self.output = output
        self.yaml = ruamel.yaml.YAML(typ="rt")
        self.yaml.indent(mapping=2, sequence=4, offset=2)
        self.yaml.default_flow_style = False
        self.yaml.allow_unicode = True
        self.yaml.width = 4096

    def render(self, report: Dict[str, Any]) -> str:
        ordered = _sorted(report)
        if self.fmt == "json":
            text = json.dumps(ordered, indent=2, sort_keys=True, ensure_ascii=False)
            return text + "\n"
        buffer = StringIO()
        self.yaml.dump(ordered, buffer)
        return buffer.getvalue()

    def write(self, report: Dict[str, Any]) -> None:
        text = self.render(report)
        if self.output is None:
            click.echo(text, nl=False)
            return
        path = Path(self.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to write report {self.output}: {e}")
            raise
        logger.info(f"Wrote {self.fmt} report to {self.output}")

    def write_text(self, file_path: str, text: str) -> None:
        """Write an auxiliary plain-text artifact such as a flow edge list."""
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to write {file_path}: {e}")
            raise
