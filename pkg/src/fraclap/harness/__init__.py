"""Verification harness: field presets, suite configuration, check runner and reports."""
