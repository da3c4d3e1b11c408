import bnd_work

TOKEN = 11
bnd_work.spin(400)
FIELDS = tuple(range(2))
