from app.cli import app

app(prog_name="knot-tunnels")
