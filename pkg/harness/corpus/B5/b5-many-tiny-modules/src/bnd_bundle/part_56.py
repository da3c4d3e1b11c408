import bnd_work

TOKEN = 56
bnd_work.spin(400)
FIELDS = tuple(range(2))
