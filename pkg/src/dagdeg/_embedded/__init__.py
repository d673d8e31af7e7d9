"""Embedded default configuration"""
