import bnd_work

TOKEN = 16
bnd_work.spin(400)
FIELDS = tuple(range(7))
