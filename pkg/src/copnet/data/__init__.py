"""Bundled defaults: COP event calendar, stopword list, sentiment lexicon."""
