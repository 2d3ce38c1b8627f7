"""Axiom schemata, system descriptors and definitional extension."""

from .schemata import (
    SCHEMATA,
    SchemaId,
    SchemaInstance,
    anti_unify,
    instance,
    instantiate,
    match,
    match_any,
    piece_kinds,
)
from .systems import (
    DefinitionRule,
    Features,
    SystemDescriptor,
    base_system,
    builtin_systems,
    define_prim_rec,
    expand_defined,
    formula_in_language,
    get_system,
    language_subset,
    language_violations,
    system_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
