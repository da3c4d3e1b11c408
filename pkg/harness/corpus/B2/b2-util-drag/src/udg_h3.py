import udg_params
import udg_work

udg_work.spin(udg_params.TABLE_ITERS)
TABLES = {i: (i * 2654435761) % 4294967296 for i in range(udg_params.ROWS)}
