from chainmix.export.dot import DEFAULT_COVERAGE, DotExportError, DrawnEdge, chain_to_dot, render_dot, select_edges

__all__ = ["DEFAULT_COVERAGE", "DotExportError", "DrawnEdge", "chain_to_dot", "render_dot", "select_edges"]
