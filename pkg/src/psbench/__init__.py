"""Benchmarking harness for natural-language-to-PowerShell code generators."""

__version__ = "0.1.0"
