import bnd_work

TOKEN = 12
bnd_work.spin(400)
FIELDS = tuple(range(3))
