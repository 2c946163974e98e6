from .wh import graph_from_seifert, s_recursion, seifert_from_graph, wh_form_basis, wh_invariants

__all__ = ["graph_from_seifert", "s_recursion", "seifert_from_graph", "wh_form_basis", "wh_invariants"]
