import bnd_work

TOKEN = 37
bnd_work.spin(400)
FIELDS = tuple(range(1))
