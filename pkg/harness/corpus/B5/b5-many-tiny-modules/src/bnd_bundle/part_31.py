import bnd_work

TOKEN = 31
bnd_work.spin(400)
FIELDS = tuple(range(4))
