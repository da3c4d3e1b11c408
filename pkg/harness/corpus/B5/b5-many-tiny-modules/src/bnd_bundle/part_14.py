import bnd_work

TOKEN = 14
bnd_work.spin(400)
FIELDS = tuple(range(5))
