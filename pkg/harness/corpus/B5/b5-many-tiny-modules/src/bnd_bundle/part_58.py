import bnd_work

TOKEN = 58
bnd_work.spin(400)
FIELDS = tuple(range(4))
