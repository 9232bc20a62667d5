"""Python access to the hurwitz-strata core.

Portraits may be given as a path, a JSON string or a dict.
"""

import json
import os

from . import _core
from ._core import DefectError, InputError, PortraitFormatError, PortraitGenusError

__all__ = [
    "DefectError",
    "InputError",
    "PortraitFormatError",
    "PortraitGenusError",
    "Strata",
    "run",
    "validate",
]


def _portrait_text(portrait):
    if isinstance(portrait, dict):
        return json.dumps(portrait)
    if isinstance(portrait, os.PathLike) or (isinstance(portrait, str) and not portrait.lstrip().startswith("{")):
        with open(portrait, encoding="utf-8") as f:
            return f.read()
    return portrait


def validate(portrait):
    """List of (kind, message) violations; empty when the portrait is valid."""
    return _core.validate(_portrait_text(portrait))


def run(*args):
    """Runs the CLI in-process: (exit code, stdout, stderr)."""
    return _core.run([str(a) for a in args])


class Strata:
    """Hurwitz classes of a portrait with their poset and covers."""

    def __init__(self, portrait, max_codim=None, jobs=1):
        self._s = _core.Stratification(_portrait_text(portrait), max_codim, jobs)

    def __len__(self):
        return len(self._s)

    @property
    def num_components(self):
        return self._s.num_components

    @property
    def ids(self):
        return list(self._s.short_ids)

    @property
    def codims(self):
        return list(self._s.codims)

    def report(self, verbose=False):
        return json.loads(self._s.to_json(verbose))

    def table(self):
        return self._s.table()

    def poset_dot(self):
        return self._s.poset_dot()

    def cover(self, class_id):
        return json.loads(self._s.cover_json(class_id))

    def trop_target(self, class_id, lengths):
        return json.loads(self._s.trop_target(class_id, [str(x) for x in lengths]))

    def trop_source(self, class_id, lengths):
        return json.loads(self._s.trop_source(class_id, [str(x) for x in lengths]))

    def cross_component_pairs(self):
        return list(self._s.cross_component_pairs())
