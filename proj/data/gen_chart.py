#!/usr/bin/env python3
"""Regenerates chart256.pgm, the synthetic grey test chart used by the
benchmark presets: smooth ramps, high-contrast shapes, thin line groups,
point targets and a sinusoidal texture patch, so that blur, noise and
restoration artifacts are all visible in SNR terms."""

import numpy as np

N = 256
yy, xx = np.mgrid[0:N, 0:N].astype(np.float64)

# Diagonal background ramp 40..200.
img = 40.0 + 160.0 * (xx + yy) / (2 * (N - 1))

# Large bright disk.
img[(xx - 80) ** 2 + (yy - 88) ** 2 <= 55**2] = 235.0

# Dark rectangle.
img[35:95, 150:215] = 25.0

# Mid-grey disk over the ramp.
img[(xx - 190) ** 2 + (yy - 180) ** 2 <= 25**2] = 90.0

# Vertical bar group, widths 1..4 px, alternating dark/bright.
x0 = 20
for width in (1, 1, 2, 2, 3, 3, 4, 4):
    img[150:230, x0 : x0 + width] = 245.0
    x0 += 2 * width
# Horizontal bar group.
y0 = 205
for width in (1, 1, 2, 2, 3, 3):
    img[y0 : y0 + width, 120:200] = 15.0
    y0 += 2 * width

# Sinusoidal texture patch.
patch = 128.0 + 55.0 * np.sin(xx / 3.0) * np.sin(yy / 5.0)
img[20:80, 215:250] = patch[20:80, 215:250]

# Point targets of decreasing spacing.
for i, x in enumerate((120, 130, 138, 144, 148)):
    img[120 : 120 + 2, x : x + 2] = 250.0

# Thin diagonal line.
for t in range(90):
    x, y = 30 + t, 110 + t // 2
    img[y, x] = 10.0

img = np.clip(np.rint(img), 0, 255).astype(np.uint8)
with open("chart256.pgm", "wb") as fh:
    fh.write(b"P5\n256 256\n255\n")
    fh.write(img.tobytes())
print("wrote chart256.pgm", img.min(), img.max(), img.std())
