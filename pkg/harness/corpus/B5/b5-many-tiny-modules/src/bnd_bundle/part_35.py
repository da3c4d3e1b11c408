import bnd_work

TOKEN = 35
bnd_work.spin(400)
FIELDS = tuple(range(8))
