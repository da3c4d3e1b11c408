import bnd_work

TOKEN = 13
bnd_work.spin(400)
FIELDS = tuple(range(4))
