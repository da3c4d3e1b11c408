import bnd_work

TOKEN = 30
bnd_work.spin(400)
FIELDS = tuple(range(3))
