"""Tests for the lcd_certify project."""
