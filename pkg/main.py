"""
Main Entry Point for the Lestrade Type Inspector

Runs a Lestrade book (readfile) or the interactive command loop
(interface). Books are .lti files of Lestrade commands; every run writes a
log that can itself be re-run as a book.
"""

import argparse
import logging
import sys

from interface import Inspector, InspectorConfig
from kernel import CommandError


def build_config(args) -> InspectorConfig:
    """Environment settings overridden by command line flags"""
    config = InspectorConfig.from_env()
    overrides = {
        'margin': args.margin,
        'rewrite_step_limit': args.step_limit,
        'book_dir': args.book_dir,
        'log_level': args.log_level,
    }
    updates = {key: value for key, value in overrides.items() if value is not None}
    if args.no_banner:
        updates['show_banner'] = False
    return InspectorConfig(**{**config.model_dump(), **updates})


def main():
    """Main entry point"""
    parser = argparse.ArgumentParser(
        description='Lestrade Type Inspector'
    )
    parser.add_argument('--margin', type=int, help='Pretty printer right margin')
    parser.add_argument('--step-limit', type=int, help='Cap on rewrite steps per term')
    parser.add_argument('--book-dir', help='Directory holding .lti books and logs')
    parser.add_argument('--log-level', help='Diagnostic logging level')
    parser.add_argument('--no-banner', action='store_true', help='Skip the greeting')

    commands = parser.add_subparsers(dest='command')

    readfile = commands.add_parser('readfile', help='Run a book, logging to another file')
    readfile.add_argument('source', help='Book to read (.lti may be omitted)')
    readfile.add_argument('log', help='Log file to write (.lti may be omitted)')
    readfile.add_argument(
        '--batch',
        action='store_true',
        help='Exit after the book instead of entering the interface'
    )

    interface = commands.add_parser('interface', help='Interactive command loop')
    interface.add_argument('log', nargs='?', default='', help='Log file to write')

    args = parser.parse_args()
    config = build_config(args)

    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.WARNING),
        format='%(asctime)s %(name)s %(levelname)s %(message)s'
    )
    sys.setrecursionlimit(config.recursion_limit)

    inspector = Inspector(config)

    if args.command == 'readfile':
        try:
            completed = inspector.read_file(args.source, args.log, interactive=not args.batch)
        except CommandError as err:
            inspector.say_pause(err.message)
            return 1
        return 0 if completed else 1
    elif args.command == 'interface':
        inspector.repl(log=args.log)
        return 0
    else:
        parser.print_help()
        return 0


if __name__ == '__main__':
    sys.exit(main())
