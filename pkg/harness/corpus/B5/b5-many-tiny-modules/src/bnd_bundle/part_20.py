import bnd_work

TOKEN = 20
bnd_work.spin(400)
FIELDS = tuple(range(2))
