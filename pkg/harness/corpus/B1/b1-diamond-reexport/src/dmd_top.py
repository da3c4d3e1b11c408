import dmd_left
import dmd_right

SUMMARY = dmd_left.VIEW_LEFT + dmd_right.VIEW_RIGHT
