"""Vehicle assignment, route construction and objective evaluation.

Import from the submodules directly (``mmirp_routing.evaluate`` and friends);
the schedule package depends on ``mmirp_routing.packing`` so this package
keeps no eager imports.
"""
