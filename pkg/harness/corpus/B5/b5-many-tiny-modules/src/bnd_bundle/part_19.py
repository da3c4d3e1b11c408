import bnd_work

TOKEN = 19
bnd_work.spin(400)
FIELDS = tuple(range(1))
