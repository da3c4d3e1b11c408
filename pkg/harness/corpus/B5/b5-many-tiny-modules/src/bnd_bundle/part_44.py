import bnd_work

TOKEN = 44
bnd_work.spin(400)
FIELDS = tuple(range(8))
