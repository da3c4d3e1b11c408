import bnd_work

TOKEN = 4
bnd_work.spin(400)
FIELDS = tuple(range(4))
