import bnd_work

TOKEN = 28
bnd_work.spin(400)
FIELDS = tuple(range(1))
