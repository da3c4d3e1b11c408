import bnd_work

TOKEN = 51
bnd_work.spin(400)
FIELDS = tuple(range(6))
