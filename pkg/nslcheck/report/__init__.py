from .asp import count_answer_sets, export_asp
from .human import render_human
from .json_report import dumps, make_report, problem_digest

__all__ = ["count_answer_sets", "dumps", "export_asp", "make_report", "problem_digest", "render_human"]
