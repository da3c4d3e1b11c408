import bnd_work

TOKEN = 52
bnd_work.spin(400)
FIELDS = tuple(range(7))
