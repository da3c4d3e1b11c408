import bnd_work

TOKEN = 8
bnd_work.spin(400)
FIELDS = tuple(range(8))
