"""Regenerate the bundled 256x256 grayscale test images from scikit-image sample data.

brick (CC0), grass (CC0), astronaut (NASA, public domain) and camera
(scikit-image, no known copyright restrictions) are 2x2 box-averaged from
512x512 to 256x256, converted to luma with Rec.601 weights where needed, and
written as binary PGM.
"""
import os

import numpy as np
import skimage.io as io
from skimage import data as skdata

SRC = os.path.dirname(skdata.__file__)
DST = os.path.join(os.path.dirname(__file__), "..", "data", "images")

def luma(img):
    if img.ndim == 3:
        img = img[..., :3].astype(np.float64) @ np.array([0.299, 0.587, 0.114])
    return img.astype(np.float64)

def halve(img):
    h, w = img.shape
    return img[: h // 2 * 2, : w // 2 * 2].reshape(h // 2, 2, w // 2, 2).mean(axis=(1, 3))

def save_pgm(path, img):
    q = np.clip(np.floor(img + 0.5), 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (q.shape[1], q.shape[0]))
        f.write(q.tobytes())

for name in ["brick", "grass", "astronaut", "camera"]:
    img = halve(luma(io.imread(os.path.join(SRC, name + ".png"))))
    save_pgm(os.path.join(DST, name + ".pgm"), img)
    print(name, img.shape)
