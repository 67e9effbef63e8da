from .fuse import FusedFrame, fuse_views
from .noise import synth_hifi
from .raster import (FLOOR_GRAY, MARKER_GRAY, OUTSIDE_GRAY, PLATFORM_GRAY,
                     Frame, Renderer)
