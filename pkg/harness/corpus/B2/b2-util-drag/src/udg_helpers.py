import udg_h0
import udg_h1
import udg_h2
import udg_h3
import udg_h4
import udg_h5
