"""
正则表达式推断工具包
"""

__version__ = "1.0.0"
