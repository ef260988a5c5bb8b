# Const
FORMAT_VERSION = "pgv1"
COMPLEX_DOCUMENT_KIND = "complex"
PRESENTATION_DOCUMENT_KIND = "presentation"
GENERATORS_KEY = "gens:"
RELATOR_KEY = "rel:"
INVERSE_PREFIX = "-"
BAR_SUFFIX = "bar"
VOLUME_PLACEHOLDER = "external"
VOLUME_NOTE = "volumes require hyperbolic-geometry software and are not computed"
