#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from src.adapters.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
