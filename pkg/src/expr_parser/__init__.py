# Lecture et rendu: expressions textuelles et fichiers système
from src.expr_parser.parser import parse_expr, tokenize
from src.expr_parser.renderer import render_expr
from src.expr_parser.system_file import (
    parse_system_file,
    SystemDefinition,
    IntegrationDefaults,
)
