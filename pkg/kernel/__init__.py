"""
Lestrade kernel: terms, session state, sort checking, implicit arguments
and rewriting
"""

from kernel.errors import LestradeError, CommandError, KernelFault, CheckIssue
from kernel.terms import (
    Ent,
    App,
    Unknown,
    ErrorEntity,
    EntArg,
    AbstArg,
    Lambda,
    Obj,
    Prop,
    TypeSort,
    ErrorSort,
    That,
    In,
    EType,
    AType,
    Entry,
    World,
    negate_namespaces,
    reindex_for_record,
)
from kernel.context import Session, RewriteRule, SavedTheory
from kernel.render import Renderer
from kernel.checker import Checker, CheckListener
from kernel.implicit import ImplicitResolver
from kernel.rewrite import RewriteEngine

__all__ = [
    'LestradeError',
    'CommandError',
    'KernelFault',
    'CheckIssue',
    'Ent',
    'App',
    'Unknown',
    'ErrorEntity',
    'EntArg',
    'AbstArg',
    'Lambda',
    'Obj',
    'Prop',
    'TypeSort',
    'ErrorSort',
    'That',
    'In',
    'EType',
    'AType',
    'Entry',
    'World',
    'negate_namespaces',
    'reindex_for_record',
    'Session',
    'RewriteRule',
    'SavedTheory',
    'Renderer',
    'Checker',
    'CheckListener',
    'ImplicitResolver',
    'RewriteEngine',
]
