import bnd_work

TOKEN = 33
bnd_work.spin(400)
FIELDS = tuple(range(6))
