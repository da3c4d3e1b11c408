import bnd_work

TOKEN = 45
bnd_work.spin(400)
FIELDS = tuple(range(0))
