#!/usr/bin/env python3
"""Run the acceptance suite and show the per-criterion PASS lines."""

import subprocess
import sys

if __name__ == "__main__":
    sys.exit(
        subprocess.call(
            [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-v", "-s"]
        )
    )
