"""
``tree validate <paren>``: parse check.
"""

from __future__ import annotations

import argparse

from ornapop.commands.common import ExitCode, emit, tree_argument


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("tree", help="Tree utilities")
    actions = parser.add_subparsers(dest="action", required=True)
    validate = actions.add_parser("validate", help="Check a parenthesis string")
    validate.add_argument("paren", help="Balanced-parenthesis tree, e.g. '(()())'")
    validate.set_defaults(handler=handle_validate)


async def handle_validate(args: argparse.Namespace) -> int:
    tree = tree_argument(args.paren)
    emit(tree.render(), str(tree.n))
    return ExitCode.OK
