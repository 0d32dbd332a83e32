#!/usr/bin/env python
"""
Entry point for the qr-obstructions commands, e.g.
    ./manage.py check_pair "surface(2) * cp(2)" --omega "vol(1) ^ sym(2)" --n 4
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cohomology.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Is it installed in your virtualenv? See README.md"
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
