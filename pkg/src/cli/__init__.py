from .expr import parse, evaluate, tokenize
from .commands import Session, build_session, run, SUITE_RUNNERS
from .main import main, build_parser
