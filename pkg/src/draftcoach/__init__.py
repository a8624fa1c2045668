"""draftcoach: an abstract-writing feedback engine.

Parses a paper's introduction into a rhetorical-structure tree, classifies
abstract sentences into five genres, scores drafts on five linguistic-quality
facets, aligns a reference abstract to its source, and serves an interactive
revise-analyze loop.
"""

__version__ = "0.1.0"
