import bnd_work

TOKEN = 36
bnd_work.spin(400)
FIELDS = tuple(range(0))
