import bnd_work

TOKEN = 43
bnd_work.spin(400)
FIELDS = tuple(range(7))
