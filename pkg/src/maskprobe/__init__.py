"""maskprobe: interaction-based occlusion probing for image classifiers.

Paint away the parts of an image you believe do not matter, classify what
is left, and read the confidence shift. The package bundles the mask
engine, the preprocessing/inference pipeline, an HTTP session service, and
a batch experiment harness.
"""

__version__ = "0.1.0"
