import bnd_work

TOKEN = 23
bnd_work.spin(400)
FIELDS = tuple(range(5))
