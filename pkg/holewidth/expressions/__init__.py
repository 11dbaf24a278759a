from .cwd import evaluate, parse, serialize, width

__all__ = ['evaluate', 'parse', 'serialize', 'width']
