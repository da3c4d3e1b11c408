import bnd_work

TOKEN = 55
bnd_work.spin(400)
FIELDS = tuple(range(1))
