import logging
import sys
from typing import TextIO


from app.core.config import settings

_stream: TextIO = sys.stdout


def set_log_stream(stream: TextIO) -> None:
    """
    切换日志输出流

    命令行工具把日志写到stderr，保证stdout只输出机器可读内容
    """
    global _stream
    _stream = stream
    for name in list(logging.root.manager.loggerDict):
        logger = logging.getLogger(name)
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler):
                # 不用 setStream：它会先 flush 旧流，而旧流可能已关闭
                handler.acquire()
                try:
                    handler.stream = stream
                finally:
                    handler.release()


def get_logger(name: str | None = None) -> logging.Logger:
    """
    获取配置好的日志记录器
    """
    logger = logging.getLogger(name)

    # 避免重复配置
    if logger.handlers:
        return logger

    # 设置日志级别
    log_level: int = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logger.setLevel(log_level)

    # 创建控制台处理器
    console_handler = logging.StreamHandler(_stream)
    console_handler.setLevel(log_level)

    # 创建格式化器
    formatter = logging.Formatter(settings.LOG_FORMAT)
    console_handler.setFormatter(formatter)

    # 添加处理器到日志记录器
    logger.addHandler(console_handler)

    return logger
