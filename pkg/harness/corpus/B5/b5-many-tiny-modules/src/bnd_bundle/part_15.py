import bnd_work

TOKEN = 15
bnd_work.spin(400)
FIELDS = tuple(range(6))
