"""
Validation utilities for the abelian structure toolkit.
Turns parsed JSON documents into presentations, module specs and orders.
"""

from typing import Any, List, Optional, Tuple

from ..models.dedekind import BlockSpec, CycleKind, ModuleSpec, RingKind, RingModel, SigmaMode
from ..models.presentation import Presentation
from .errors import AbstError


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class PresentationValidator:
    """Presentation file validation utility."""

    @classmethod
    def validate(cls, data: Any) -> Tuple[Optional[Presentation], Optional[str]]:
        """
        Validate a parsed presentation document.

        Returns:
            Tuple of (presentation, error_message)
        """
        if not isinstance(data, dict):
            return None, "Presentation must be a JSON object"

        prime = data.get('prime')
        if not _is_int(prime):
            return None, "\"prime\" must be an integer"

        generators = data.get('generators')
        if not isinstance(generators, list) or not generators:
            return None, "\"generators\" must be a non-empty array of names"
        if not all(isinstance(g, str) and g for g in generators):
            return None, "generator names must be non-empty strings"

        relations = data.get('relations', [])
        if not isinstance(relations, list):
            return None, "\"relations\" must be an array of integer arrays"
        for k, relation in enumerate(relations, start=1):
            if not isinstance(relation, list) or not all(_is_int(a) for a in relation):
                return None, f"relation {k} must be an array of integers"
            if len(relation) != len(generators):
                return None, f"relation {k} has {len(relation)} entries for {len(generators)} generators"

        names = data.get('names', {})
        if not isinstance(names, dict):
            return None, "\"names\" must be an object"

        try:
            return Presentation(prime, tuple(generators), tuple(tuple(r) for r in relations), names), None
        except AbstError as e:
            return None, str(e)


class ModuleSpecValidator:
    """Module spec file validation utility."""

    @classmethod
    def validate(cls, data: Any) -> Tuple[Optional[ModuleSpec], Optional[str]]:
        """
        Validate a parsed module spec document.

        Returns:
            Tuple of (module_spec, error_message)
        """
        if not isinstance(data, dict):
            return None, "Module spec must be a JSON object"

        ring = data.get('ring')
        if not isinstance(ring, dict):
            return None, "\"ring\" must be an object with \"kind\" and \"p\""
        try:
            kind = RingKind(ring.get('kind'))
        except ValueError:
            return None, "ring kind must be \"zcp\" or \"pullback\""
        if not _is_int(ring.get('p')):
            return None, "ring \"p\" must be an integer"

        try:
            cycle = CycleKind(data.get('cycle', 'deleted'))
        except ValueError:
            return None, "\"cycle\" must be \"deleted\" or \"block\""
        try:
            sigma_mode = SigmaMode(data.get('sigma', 'full'))
        except ValueError:
            return None, "\"sigma\" must be \"full\" or \"constant\""

        blocks = data.get('blocks')
        if not isinstance(blocks, list) or not blocks:
            return None, "\"blocks\" must be a non-empty array"
        if not all(isinstance(b, dict) and 'd1' in b and 'd2' in b for b in blocks):
            return None, "every block needs \"d1\" and \"d2\""

        f = data.get('f', [])
        glue = data.get('glue', [])
        for field_name, values in (('f', f), ('glue', glue)):
            if not isinstance(values, list) or not all(_is_int(c) for c in values):
                return None, f"\"{field_name}\" must be an array of integers"

        try:
            spec = ModuleSpec(
                ring=RingModel(kind, ring['p']),
                cycle=cycle,
                blocks=tuple(BlockSpec.from_dict(b) for b in blocks),
                f=tuple(f),
                glue=tuple(glue),
                sigma_mode=sigma_mode,
            )
        except AbstError as e:
            return None, str(e)
        return spec, None


class PermutationValidator:
    """Forced variable order validation utility."""

    @staticmethod
    def validate(text: Optional[str], q: int) -> Tuple[Optional[List[int]], Optional[str]]:
        """
        Validate a comma-separated list of 1-based variables, smallest first.

        Returns:
            Tuple of (0-based precedence, error_message)
        """
        if text is None:
            return None, None
        try:
            values = [int(v) for v in text.replace(' ', '').split(',') if v]
        except ValueError:
            return None, "--perm must be a comma-separated list of variable indices"
        if sorted(values) != list(range(1, q + 1)):
            return None, f"--perm must list each of the variables 1..{q} exactly once"
        return [v - 1 for v in values], None
