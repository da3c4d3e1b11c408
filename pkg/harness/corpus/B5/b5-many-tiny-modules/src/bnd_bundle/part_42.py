import bnd_work

TOKEN = 42
bnd_work.spin(400)
FIELDS = tuple(range(6))
