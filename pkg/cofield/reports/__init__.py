"""Report tables, their renderings, and graph export."""

from .table import Column
from .table import ReportTable
from .table import format_percent
from .table import render

from .tables import corpus_summary_table
from .tables import correlation_table
from .tables import discipline_pair_table
from .tables import field_pair_ranking
from .tables import field_pair_table
from .tables import max_interdisciplinarity_report
from .tables import pair_label
from .tables import pair_table_from_counts
from .tables import profile_table
from .tables import rank_partners
from .tables import threshold_pair_list
from .tables import threshold_pairs

from .graph import GraphEdge
from .graph import export_graph
from .graph import graph_edges
