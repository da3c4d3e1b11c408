import bnd_work

TOKEN = 7
bnd_work.spin(400)
FIELDS = tuple(range(7))
